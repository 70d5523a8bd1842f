// Checked-in file fixtures under tests/data/fixtures.

#ifndef ASC_TESTS_SUPPORT_FIXTURES_H_
#define ASC_TESTS_SUPPORT_FIXTURES_H_

#include <string>

#include "asc/corpus.h"
#include "asc/embeddings.h"
#include "asc/llda.h"

namespace asc::synthetic {

std::string FixturePath(const std::string& name);

// s1 "Did I mention that the coffee is outstanding?" and s2 "Waiters are
// very friendly and the pasta is out of this world." with golden parses.
Dataset RunningExample();

// Five-dimensional vectors where coffee and menu are close, and seeds for
// food (menu, delicious), price (cheap, bill) and service (staff).
EmbeddingMatrix RunningExampleVectors();
SeedTable RunningExampleSeeds();

}  // namespace asc::synthetic

#endif  // ASC_TESTS_SUPPORT_FIXTURES_H_
