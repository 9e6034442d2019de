#include "cswmt/io_util.hpp"

#include <stdexcept>

namespace cswmt {

AtomicFile::AtomicFile(const std::filesystem::path& target) : target_(target) {
  if (target_.has_parent_path()) {
    std::filesystem::create_directories(target_.parent_path());
  }
  temp_ = target_;
  temp_ += ".tmp";
  out_.open(temp_, std::ios::binary | std::ios::trunc);
  if (!out_) {
    throw std::runtime_error("cannot open " + temp_.string() + " for writing");
  }
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

void AtomicFile::commit() {
  out_.close();
  if (!out_) throw std::runtime_error("write failed for " + temp_.string());
  std::filesystem::rename(temp_, target_);
  committed_ = true;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace cswmt
