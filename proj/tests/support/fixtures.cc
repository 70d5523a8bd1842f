#include "fixtures.h"

#include "asc/conllu.h"

namespace asc::synthetic {

std::string FixturePath(const std::string& name) {
  return std::string(ASC_TEST_DATA_DIR) + "/fixtures/" + name;
}

Dataset RunningExample() {
  Dataset d = LoadSemEval(FixturePath("semeval_sample.xml"), "test");
  d.reviews.resize(2);
  AttachParses(d, ReadConllu(FixturePath("running_example.conllu")));
  return d;
}

EmbeddingMatrix RunningExampleVectors() { return LoadVectors(FixturePath("running_example.vec")); }

SeedTable RunningExampleSeeds() { return ReadSeeds(FixturePath("running_example_seeds.json")); }

}  // namespace asc::synthetic
