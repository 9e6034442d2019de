#include "cswmt/semeval.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace cswmt {

namespace {

// edit(needle, hay[0:i)) for all i, as one DP sweep.
std::vector<std::size_t> edit_prefix_costs(const TokenSeq& needle,
                                           const TokenSeq& hay) {
  const std::size_t n = hay.size();
  std::vector<std::size_t> prev(n + 1), cur(n + 1);
  for (std::size_t i = 0; i <= n; ++i) prev[i] = i;
  for (std::size_t p = 1; p <= needle.size(); ++p) {
    cur[0] = p;
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t sub = prev[i - 1] + (needle[p - 1] == hay[i - 1] ? 0 : 1);
      cur[i] = std::min({sub, prev[i] + 1, cur[i - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev;
}

}  // namespace

TokenSeq extract_fragment(const TokenSeq& hyp, const SemevalItem& item) {
  const std::size_t n = hyp.size();

  const std::vector<std::size_t> pre_cost = edit_prefix_costs(item.prefix, hyp);

  TokenSeq rev_suffix(item.suffix.rbegin(), item.suffix.rend());
  TokenSeq rev_hyp(hyp.rbegin(), hyp.rend());
  const std::vector<std::size_t> rev_cost = edit_prefix_costs(rev_suffix, rev_hyp);
  // suf_cost[j] = edit(suffix, hyp[j:n))
  std::vector<std::size_t> suf_cost(n + 1);
  for (std::size_t j = 0; j <= n; ++j) suf_cost[j] = rev_cost[n - j];

  std::size_t best_i = 0, best_j = 0;
  std::size_t best_cost = SIZE_MAX;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      const std::size_t cost = pre_cost[i] + suf_cost[j];
      if (cost < best_cost ||
          (cost == best_cost && j - i < best_j - best_i)) {
        best_cost = cost;
        best_i = i;
        best_j = j;
      }
    }
  }
  return TokenSeq(hyp.begin() + best_i, hyp.begin() + best_j);
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

SemevalScore semeval_score(const std::vector<SemevalItem>& items,
                           const std::vector<TokenSeq>& hyps) {
  if (items.size() != hyps.size()) {
    throw std::runtime_error("semeval_score: " + std::to_string(items.size()) +
                             " items vs " + std::to_string(hyps.size()) +
                             " hypotheses");
  }
  if (items.empty()) throw std::runtime_error("semeval_score: no items");

  SemevalScore score;
  score.n_items = items.size();
  double word_sum = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const TokenSeq extracted = extract_fragment(hyps[i], items[i]);
    if (!extracted.empty()) ++score.n_nonempty;

    bool exact = false;
    double best_word = 0.0;
    for (const TokenSeq& ref : items[i].references) {
      if (extracted == ref) exact = true;
      const std::size_t longest = std::max(extracted.size(), ref.size());
      if (longest > 0) {
        best_word = std::max(best_word,
                             static_cast<double>(lcs_length(extracted, ref)) /
                                 static_cast<double>(longest));
      }
    }
    if (exact) ++score.n_exact;
    word_sum += best_word;
  }
  score.accuracy = static_cast<double>(score.n_exact) / static_cast<double>(score.n_items);
  score.word_accuracy = word_sum / static_cast<double>(score.n_items);
  score.recall = static_cast<double>(score.n_nonempty) / static_cast<double>(score.n_items);
  return score;
}

namespace {

struct MarkupSentence {
  std::int64_t id = 0;
  TokenSeq prefix, fragment, suffix;
};

// One <s id="N"> element per line; body either bare or wrapped in
// <input>/<ref> tags; exactly one <f ...>fragment</f> inside.
std::vector<MarkupSentence> parse_markup_line(const std::string& line) {
  std::vector<MarkupSentence> out;
  const std::size_t s_pos = line.find("<s ");
  if (s_pos == std::string::npos) return out;
  const std::size_t id_pos = line.find("id=\"", s_pos);
  if (id_pos == std::string::npos) {
    throw std::runtime_error("markup: <s> element without id attribute");
  }
  const std::size_t id_end = line.find('"', id_pos + 4);
  const std::int64_t id = std::stoll(line.substr(id_pos + 4, id_end - id_pos - 4));
  const std::size_t body_start = line.find('>', id_end) + 1;
  std::size_t body_end = line.find("</s>", body_start);
  if (body_end == std::string::npos) body_end = line.size();
  std::string body = line.substr(body_start, body_end - body_start);

  // Collect wrapped versions (<input> or <ref ...>), or the bare body.
  std::vector<std::string> versions;
  for (const char* tag : {"<input", "<ref"}) {
    std::size_t pos = 0;
    while ((pos = body.find(tag, pos)) != std::string::npos) {
      const std::size_t open_end = body.find('>', pos);
      const std::string close = tag == std::string("<input") ? "</input>" : "</ref>";
      std::size_t end = body.find(close, open_end);
      if (end == std::string::npos) end = body.size();
      versions.push_back(body.substr(open_end + 1, end - open_end - 1));
      pos = end;
    }
  }
  if (versions.empty()) versions.push_back(body);

  for (const std::string& version : versions) {
    const std::size_t f_pos = version.find("<f");
    if (f_pos == std::string::npos) {
      throw std::runtime_error("markup: sentence " + std::to_string(id) +
                               " has no <f> fragment");
    }
    const std::size_t f_open_end = version.find('>', f_pos);
    const std::size_t f_close = version.find("</f>", f_open_end);
    if (f_open_end == std::string::npos || f_close == std::string::npos) {
      throw std::runtime_error("markup: unterminated <f> in sentence " +
                               std::to_string(id));
    }
    MarkupSentence sent;
    sent.id = id;
    sent.prefix = split_tokens(version.substr(0, f_pos));
    sent.fragment = split_tokens(version.substr(f_open_end + 1, f_close - f_open_end - 1));
    sent.suffix = split_tokens(version.substr(f_close + 4));
    out.push_back(std::move(sent));
  }
  return out;
}

}  // namespace

std::vector<SemevalItem> parse_semeval_markup(std::istream& input,
                                              std::istream& reference) {
  std::vector<SemevalItem> items;
  std::map<std::int64_t, std::size_t> by_id;
  std::string line;
  while (std::getline(input, line)) {
    for (const MarkupSentence& sent : parse_markup_line(line)) {
      SemevalItem item;
      item.id = sent.id;
      item.prefix = sent.prefix;
      item.suffix = sent.suffix;
      item.source_fragment = sent.fragment;
      by_id[item.id] = items.size();
      items.push_back(std::move(item));
    }
  }
  if (items.empty()) {
    throw std::runtime_error(
        "markup input contains no <s id=\"...\"> elements; expected one "
        "sentence element per line with an <f> fragment inside");
  }
  while (std::getline(reference, line)) {
    for (const MarkupSentence& sent : parse_markup_line(line)) {
      auto it = by_id.find(sent.id);
      if (it == by_id.end()) {
        throw std::runtime_error("markup: reference for unknown sentence id " +
                                 std::to_string(sent.id));
      }
      items[it->second].references.push_back(sent.fragment);
    }
  }
  for (const SemevalItem& item : items) {
    if (item.references.empty()) {
      throw std::runtime_error("markup: sentence " + std::to_string(item.id) +
                               " has no reference");
    }
  }
  return items;
}

std::vector<SemevalItem> read_semeval_items(std::istream& in) {
  std::vector<SemevalItem> items;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    SemevalItem item;
    item.id = j.at("id").get<std::int64_t>();
    item.prefix = j.at("prefix").get<TokenSeq>();
    item.suffix = j.at("suffix").get<TokenSeq>();
    if (j.contains("source_fragment")) {
      item.source_fragment = j.at("source_fragment").get<TokenSeq>();
    }
    item.references = j.at("references").get<std::vector<TokenSeq>>();
    items.push_back(std::move(item));
  }
  return items;
}

void write_semeval_items(std::ostream& out,
                         const std::vector<SemevalItem>& items) {
  for (const SemevalItem& item : items) {
    nlohmann::json j{{"id", item.id},
                     {"prefix", item.prefix},
                     {"suffix", item.suffix},
                     {"source_fragment", item.source_fragment},
                     {"references", item.references}};
    out << j.dump() << '\n';
  }
}

}  // namespace cswmt
