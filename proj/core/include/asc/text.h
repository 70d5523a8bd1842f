// Small string helpers shared by the loaders and the generators.

#ifndef ASC_TEXT_H_
#define ASC_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace asc {

std::string ToLower(std::string_view s);

// Whitespace-plus-punctuation tokenization. Used for statistics and for
// reviews that have no attached parse; parsed reviews use parser tokens.
// Apostrophes inside a word are kept ("don't"), every other ASCII
// punctuation character becomes its own token.
std::vector<std::string> SimpleTokenize(std::string_view text);

bool HasLetter(std::string_view s);

std::vector<std::string> Split(std::string_view s, char sep);

std::string_view Trim(std::string_view s);

}  // namespace asc

#endif  // ASC_TEXT_H_
