#ifndef ASC_STOPWORDS_H_
#define ASC_STOPWORDS_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

namespace asc {

// The shipped English list (data/stopwords_en.txt).
const std::set<std::string>& DefaultStopwords();

// One token per line; blank lines and lines starting with '#' are ignored.
// Tokens are lowercased.
std::set<std::string> ParseStopwords(std::string_view text);
std::set<std::string> LoadStopwords(const std::filesystem::path& path);

}  // namespace asc

#endif  // ASC_STOPWORDS_H_
