// JSON-lines interchange for canonical datasets and classification units.
//
// Review record: {"id", "text", "tokens": [{"id", "form", "lemma", "upos",
// "xpos", "head", "deprel"}], "annotations": [{"target"?, "category",
// "sentiment"}], "split"}.
// Unit record: {"review_id", "target"?, "category", "gold_label"}.

#ifndef ASC_DATASET_IO_H_
#define ASC_DATASET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "asc/corpus.h"

namespace asc {

void WriteDatasetJsonl(std::ostream& out, const Dataset& dataset);
void WriteDatasetJsonl(const std::filesystem::path& path, const Dataset& dataset);

// When `task` is absent it is inferred: TABSA if any annotation carries a
// target or any review mentions a LOC<n> target, ABSA otherwise.
Dataset ReadDatasetJsonl(std::istream& in, std::optional<Task> task = std::nullopt);
Dataset ReadDatasetJsonl(const std::filesystem::path& path,
                         std::optional<Task> task = std::nullopt);

void WriteUnitsJsonl(const std::filesystem::path& path,
                     const std::vector<ClassificationUnit>& units);

// Reads unit records. Pair files written by the auxiliary-sentence stage are
// accepted too; their extra fields are ignored.
std::vector<ClassificationUnit> ReadUnitsJsonl(const std::filesystem::path& path);

}  // namespace asc

#endif  // ASC_DATASET_IO_H_
