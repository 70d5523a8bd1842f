// CoNLL-U reading and writing. Only basic token lines are kept: multiword
// token ranges ("2-3") and empty nodes ("4.1") are skipped.

#ifndef ASC_CONLLU_H_
#define ASC_CONLLU_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asc {

struct ParsedToken {
  int index = 0;  // 1-based position in the sentence.
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  int head = 0;  // 0 = root.
  std::string deprel;

  bool operator==(const ParsedToken&) const = default;
};

struct ConlluSentence {
  std::optional<std::string> sent_id;  // from "# sent_id = ..."
  std::optional<std::string> text;     // from "# text = ..."
  std::vector<ParsedToken> tokens;
};

// Throws ParseError (location = 1-based line number) on malformed lines.
std::vector<ConlluSentence> ReadConllu(std::istream& in);
std::vector<ConlluSentence> ReadConllu(const std::filesystem::path& path);

void WriteConllu(std::ostream& out, const std::vector<ConlluSentence>& sentences);

// Checks the tree invariants: indices are 1..n in order, every head is 0 or
// a valid index other than the token's own, exactly one root. Throws
// ValidationError naming `context`.
void ValidateTree(const std::vector<ParsedToken>& tokens, const std::string& context);

// Base relation without a subtype: "nsubj:pass" -> "nsubj".
std::string BaseRelation(const std::string& deprel);

}  // namespace asc

#endif  // ASC_CONLLU_H_
