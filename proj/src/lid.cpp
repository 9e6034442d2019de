#include "cswmt/lid.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cswmt {

namespace {

bool is_ascii_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

// Unicode punctuation commonly left by tokenizers: general punctuation
// block U+2000..U+206F, guillemets U+00AB/U+00BB.
bool is_unicode_punct(const std::string& s, std::size_t i, std::size_t& len) {
  const unsigned char c0 = static_cast<unsigned char>(s[i]);
  if (c0 == 0xC2 && i + 1 < s.size()) {
    const unsigned char c1 = static_cast<unsigned char>(s[i + 1]);
    if (c1 == 0xAB || c1 == 0xBB) {
      len = 2;
      return true;
    }
  }
  if (c0 == 0xE2 && i + 2 < s.size() &&
      static_cast<unsigned char>(s[i + 1]) >= 0x80 &&
      static_cast<unsigned char>(s[i + 1]) <= 0x81) {
    len = 3;
    return true;
  }
  return false;
}

}  // namespace

bool is_neutral_token(const std::string& token) {
  if (token.empty()) return false;
  for (std::size_t i = 0; i < token.size();) {
    const char c = token[i];
    if ((c >= '0' && c <= '9') || is_ascii_punct(c)) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    if (is_unicode_punct(token, i, len)) {
      i += len;
      continue;
    }
    return false;
  }
  return true;
}

LidLexicon LidLexicon::build(const std::string& lang_a,
                             const std::vector<TokenSeq>& corpus_a,
                             const std::string& lang_b,
                             const std::vector<TokenSeq>& corpus_b) {
  LidLexicon lexicon;
  lexicon.lang_a = lang_a;
  lexicon.lang_b = lang_b;
  for (const TokenSeq& sent : corpus_a) lexicon.add(lang_a, sent);
  for (const TokenSeq& sent : corpus_b) lexicon.add(lang_b, sent);
  return lexicon;
}

void LidLexicon::add(const std::string& lang, const TokenSeq& sentence) {
  if (lang == lang_a) {
    for (const Token& tok : sentence) ++counts_a[tok];
    total_a += sentence.size();
  } else if (lang == lang_b) {
    for (const Token& tok : sentence) ++counts_b[tok];
    total_b += sentence.size();
  } else {
    throw std::runtime_error("lexicon has no language '" + lang + "'");
  }
}

void LidLexicon::save(std::ostream& out) const {
  out << "cswmt-lexicon 1\n";
  out << lang_a << ' ' << lang_b << ' ' << rho << ' ' << floor_count << '\n';
  for (const auto& [tok, c] : counts_a) out << "a " << tok << ' ' << c << '\n';
  for (const auto& [tok, c] : counts_b) out << "b " << tok << ' ' << c << '\n';
}

LidLexicon LidLexicon::load(std::istream& in) {
  LidLexicon lexicon;
  std::string line;
  if (!std::getline(in, line) || line != "cswmt-lexicon 1") {
    throw std::runtime_error("not a cswmt-lexicon file");
  }
  if (!(in >> lexicon.lang_a >> lexicon.lang_b >> lexicon.rho >> lexicon.floor_count)) {
    throw std::runtime_error("lexicon: malformed header");
  }
  std::string side, tok;
  std::uint64_t count = 0;
  while (in >> side >> tok >> count) {
    if (side == "a") {
      lexicon.counts_a[tok] = count;
      lexicon.total_a += count;
    } else if (side == "b") {
      lexicon.counts_b[tok] = count;
      lexicon.total_b += count;
    } else {
      throw std::runtime_error("lexicon: bad side marker '" + side + "'");
    }
  }
  return lexicon;
}

std::string lid_classify(const std::string& token, const LidLexicon& lexicon) {
  if (is_neutral_token(token)) return kLidNeutral;
  const auto a = lexicon.counts_a.find(token);
  const auto b = lexicon.counts_b.find(token);
  const double ca = a == lexicon.counts_a.end()
                        ? lexicon.floor_count
                        : std::max<double>(static_cast<double>(a->second), lexicon.floor_count);
  const double cb = b == lexicon.counts_b.end()
                        ? lexicon.floor_count
                        : std::max<double>(static_cast<double>(b->second), lexicon.floor_count);
  const double fa = ca / static_cast<double>(std::max<std::uint64_t>(lexicon.total_a, 1));
  const double fb = cb / static_cast<double>(std::max<std::uint64_t>(lexicon.total_b, 1));
  if (fa > lexicon.rho * fb) return lexicon.lang_a;
  if (fb > lexicon.rho * fa) return lexicon.lang_b;
  return kLidUnknown;
}

std::function<bool(const ParallelPair&)> make_lid_pair_filter(
    const LidLexicon& lexicon, double min_fraction) {
  return [&lexicon, min_fraction](const ParallelPair& pair) {
    auto side_ok = [&](const TokenSeq& tokens, const std::string& expect) {
      std::uint64_t considered = 0, hits = 0;
      for (const Token& tok : tokens) {
        const std::string label = lid_classify(tok, lexicon);
        if (label == kLidNeutral || label == kLidUnknown) continue;
        ++considered;
        if (label == expect) ++hits;
      }
      if (considered == 0) return true;  // no evidence either way
      return static_cast<double>(hits) >=
             min_fraction * static_cast<double>(considered);
    };
    return side_ok(pair.src_tokens, pair.src_lang) &&
           side_ok(pair.tgt_tokens, pair.tgt_lang);
  };
}

}  // namespace cswmt
