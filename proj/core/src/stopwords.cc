#include "asc/stopwords.h"

#include <fstream>
#include <sstream>

#include "asc/error.h"
#include "asc/text.h"

namespace asc {
namespace internal {
extern const std::string_view kDefaultStopwordsText;
}  // namespace internal

std::set<std::string> ParseStopwords(std::string_view text) {
  std::set<std::string> words;
  for (const std::string& line : Split(text, '\n')) {
    const std::string_view w = Trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(ToLower(w));
  }
  return words;
}

const std::set<std::string>& DefaultStopwords() {
  static const std::set<std::string> kWords = ParseStopwords(internal::kDefaultStopwordsText);
  return kWords;
}

std::set<std::string> LoadStopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseStopwords(ss.str());
}

}  // namespace asc
