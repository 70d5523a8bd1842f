// Internal JSON-lines helpers.

#ifndef ASC_SRC_JSON_UTIL_H_
#define ASC_SRC_JSON_UTIL_H_

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "asc/error.h"
#include "json.hpp"

namespace asc::internal {

inline std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

inline std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

// Calls `fn` for every nonblank line parsed as JSON; ParseError carries the
// 1-based line number.
inline void ForEachJsonLine(std::istream& in, const std::string& what,
                            const std::function<void(const nlohmann::json&)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(what + " line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
    try {
      fn(record);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(what + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace asc::internal

#endif  // ASC_SRC_JSON_UTIL_H_
