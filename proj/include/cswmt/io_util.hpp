#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace cswmt {

// Write-temp-then-rename file writer. The target path never holds partial
// content: commit() renames the finished temp file into place, and an
// uncommitted writer removes its temp file on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(const std::filesystem::path& target);
  ~AtomicFile();

  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

std::vector<std::string> read_lines(const std::string& path);

}  // namespace cswmt
