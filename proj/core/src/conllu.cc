#include "asc/conllu.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "asc/error.h"
#include "asc/text.h"

namespace asc {
namespace {

bool ParseInt(const std::string& s, int* out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

std::string Field(const std::string& s) { return s == "_" ? std::string() : s; }

std::string Underscore(const std::string& s) { return s.empty() ? "_" : s; }

std::optional<std::string> CommentValue(const std::string& line,
                                        const std::string& key) {
  // "# key = value"
  std::string_view body = Trim(std::string_view(line).substr(1));
  if (body.substr(0, key.size()) != key) return std::nullopt;
  body = Trim(body.substr(key.size()));
  if (body.empty() || body.front() != '=') return std::nullopt;
  return std::string(Trim(body.substr(1)));
}

}  // namespace

std::vector<ConlluSentence> ReadConllu(std::istream& in) {
  std::vector<ConlluSentence> sentences;
  ConlluSentence current;
  bool open = false;
  std::string line;
  std::size_t line_no = 0;
  auto close = [&] {
    if (open && !current.tokens.empty()) sentences.push_back(std::move(current));
    current = ConlluSentence();
    open = false;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      close();
      continue;
    }
    open = true;
    if (line.front() == '#') {
      if (auto id = CommentValue(line, "sent_id")) current.sent_id = *id;
      if (auto text = CommentValue(line, "text")) current.text = *text;
      continue;
    }
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError("CoNLL-U line " + std::to_string(line_no) + ": expected 10 columns, got " +
                           std::to_string(cols.size()),
                       line_no);
    }
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    ParsedToken tok;
    if (!ParseInt(cols[0], &tok.index)) {
      throw ParseError("CoNLL-U line " + std::to_string(line_no) + ": bad token id '" + cols[0] + "'",
                       line_no);
    }
    if (!ParseInt(cols[6], &tok.head)) {
      throw ParseError("CoNLL-U line " + std::to_string(line_no) + ": bad head '" + cols[6] + "'",
                       line_no);
    }
    tok.form = cols[1];
    tok.lemma = Field(cols[2]);
    tok.upos = Field(cols[3]);
    tok.xpos = Field(cols[4]);
    tok.deprel = Field(cols[7]);
    current.tokens.push_back(std::move(tok));
  }
  close();
  return sentences;
}

std::vector<ConlluSentence> ReadConllu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CoNLL-U file " + path.string());
  return ReadConllu(in);
}

void WriteConllu(std::ostream& out, const std::vector<ConlluSentence>& sentences) {
  for (const auto& s : sentences) {
    if (s.sent_id) out << "# sent_id = " << *s.sent_id << '\n';
    if (s.text) out << "# text = " << *s.text << '\n';
    for (const auto& t : s.tokens) {
      out << t.index << '\t' << t.form << '\t' << Underscore(t.lemma) << '\t'
          << Underscore(t.upos) << '\t' << Underscore(t.xpos) << "\t_\t" << t.head << '\t'
          << Underscore(t.deprel) << "\t_\t_\n";
    }
    out << '\n';
  }
}

void ValidateTree(const std::vector<ParsedToken>& tokens, const std::string& context) {
  const int n = static_cast<int>(tokens.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const ParsedToken& t = tokens[i];
    if (t.index != i + 1) {
      throw ValidationError(context + ": token " + std::to_string(i + 1) + " has index " +
                            std::to_string(t.index));
    }
    if (t.head < 0 || t.head > n || t.head == t.index) {
      throw ValidationError(context + ": token " + std::to_string(t.index) + " ('" + t.form +
                            "') has out-of-range head " + std::to_string(t.head));
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw ValidationError(context + ": expected exactly one root, found " + std::to_string(roots));
  }
}

std::string BaseRelation(const std::string& deprel) {
  return deprel.substr(0, deprel.find(':'));
}

}  // namespace asc
