#include "asc/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <thread>

#include "asc/rng.h"
#include "asc/text.h"
#include "json_util.h"
#include "sgns_kernel.h"

namespace asc {

Vocabulary Vocabulary::Build(const std::vector<std::vector<std::string>>& sentences,
                             int min_count) {
  std::unordered_map<std::string, long> counts;
  for (const auto& s : sentences) {
    for (const auto& t : s) ++counts[t];
  }
  std::vector<std::pair<std::string, long>> kept;
  for (auto& [t, c] : counts) {
    if (c >= min_count) kept.emplace_back(t, c);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocabulary v;
  for (const auto& [t, c] : kept) v.Add(t, c);
  return v;
}

int Vocabulary::Add(const std::string& token, long count) {
  const int id = size();
  if (!ids_.emplace(token, id).second) {
    throw ValidationError("duplicate vocabulary token '" + token + "'");
  }
  tokens_.push_back(token);
  counts_.push_back(count);
  return id;
}

std::optional<int> Vocabulary::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void SgnsConfig::Validate() const {
  if (dim < 1) throw ConfigError("embedding dim must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (negatives < 1) throw ConfigError("negative sample count must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  if (subsample < 0.0) throw ConfigError("subsample threshold must be >= 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

EmbeddingMatrix::EmbeddingMatrix(Vocabulary vocab, int dim, std::vector<double> input,
                                 std::vector<double> output)
    : vocab_(std::move(vocab)), dim_(dim), input_(std::move(input)), output_(std::move(output)) {
  const std::size_t expected = static_cast<std::size_t>(vocab_.size()) * dim_;
  if (input_.size() != expected || (!output_.empty() && output_.size() != expected)) {
    throw ValidationError("embedding matrix shape does not match vocabulary x dim");
  }
  norms_.resize(vocab_.size());
  for (int i = 0; i < vocab_.size(); ++i) {
    auto v = InputVector(i);
    double s = 0.0;
    for (double x : v) s += x * x;
    norms_[i] = std::sqrt(s);
  }
}

double EmbeddingMatrix::SimilarityById(int a, int b) const {
  if (norms_[a] == 0.0 || norms_[b] == 0.0) return 0.0;
  if (a == b) return 1.0;
  auto va = InputVector(a);
  auto vb = InputVector(b);
  double dot = 0.0;
  for (int i = 0; i < dim_; ++i) dot += va[i] * vb[i];
  return std::clamp(dot / (norms_[a] * norms_[b]), -1.0, 1.0);
}

std::optional<double> EmbeddingMatrix::Similarity(std::string_view a, std::string_view b) const {
  auto ia = vocab_.Id(a);
  auto ib = vocab_.Id(b);
  if (!ia || !ib) return std::nullopt;
  return SimilarityById(*ia, *ib);
}

bool EmbeddingMatrix::AllFinite() const {
  auto finite = [](double x) { return std::isfinite(x); };
  return std::all_of(input_.begin(), input_.end(), finite) &&
         std::all_of(output_.begin(), output_.end(), finite);
}

EmbeddingMatrix InitializeSgns(const Vocabulary& vocab, const SgnsConfig& config) {
  config.Validate();
  const std::size_t n = static_cast<std::size_t>(vocab.size()) * config.dim;
  std::vector<double> input(n);
  Rng rng(DeriveSeed(config.seed, HashString("sgns-init")));
  for (double& x : input) x = (UniformDouble(rng) - 0.5) / config.dim;
  return EmbeddingMatrix(vocab, config.dim, std::move(input), std::vector<double>(n, 0.0));
}

namespace {

class NegativeSampler {
 public:
  explicit NegativeSampler(const Vocabulary& vocab) {
    cumulative_.reserve(vocab.size());
    double total = 0.0;
    for (int i = 0; i < vocab.size(); ++i) {
      total += std::pow(static_cast<double>(vocab.Count(i)), 0.75);
      cumulative_.push_back(total);
    }
  }

  int Draw(Rng& rng) const {
    const double u = UniformDouble(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<int>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

struct TrainState {
  const std::vector<std::vector<int>>* sentences;
  const SgnsConfig* config;
  const NegativeSampler* sampler;
  std::vector<double> keep_probability;
  double* input;
  double* output;
  long total_words;  // per epoch
};

struct WorkerResult {
  double objective = 0.0;
  long pairs = 0;
};

// Trains on sentences [begin, end) for one epoch. `processed_before` words
// were seen before this slice in the global schedule; drives lr decay.
template <typename Access>
WorkerResult TrainSlice(const TrainState& st, std::size_t begin, std::size_t end, Rng& rng,
                        long processed_before) {
  const SgnsConfig& cfg = *st.config;
  const int dim = cfg.dim;
  const double schedule = static_cast<double>(st.total_words) * cfg.epochs + 1.0;
  std::vector<double> grad(dim);
  std::vector<int> kept;
  WorkerResult result;
  long processed = processed_before;
  for (std::size_t s = begin; s < end; ++s) {
    const auto& sentence = (*st.sentences)[s];
    kept.clear();
    for (int w : sentence) {
      if (st.keep_probability[w] >= 1.0 || UniformDouble(rng) < st.keep_probability[w]) {
        kept.push_back(w);
      }
    }
    processed += static_cast<long>(sentence.size());
    const double lr =
        cfg.learning_rate * std::max(1e-4, 1.0 - static_cast<double>(processed) / schedule);
    const int n = static_cast<int>(kept.size());
    for (int pos = 0; pos < n; ++pos) {
      const int window =
          cfg.shrink_window ? 1 + static_cast<int>(UniformIndex(rng, cfg.window)) : cfg.window;
      const int center = kept[pos];
      double* v = st.input + static_cast<std::size_t>(center) * dim;
      for (int c = std::max(0, pos - window); c <= std::min(n - 1, pos + window); ++c) {
        if (c == pos) continue;
        const int context = kept[c];
        std::fill(grad.begin(), grad.end(), 0.0);
        double obj = internal::SgnsTerm<Access>(
            v, st.output + static_cast<std::size_t>(context) * dim, 1, lr, grad.data(), dim);
        for (int k = 0; k < cfg.negatives; ++k) {
          const int neg = st.sampler->Draw(rng);
          if (neg == context) continue;
          obj += internal::SgnsTerm<Access>(v, st.output + static_cast<std::size_t>(neg) * dim, 0,
                                            lr, grad.data(), dim);
        }
        internal::AddInto<Access>(v, grad.data(), dim);
        result.objective += obj;
        ++result.pairs;
      }
    }
  }
  return result;
}

}  // namespace

EmbeddingMatrix TrainSgns(const std::vector<std::vector<std::string>>& sentences,
                          const SgnsConfig& config, SgnsTrainingStats* stats) {
  config.Validate();
  Vocabulary vocab = Vocabulary::Build(sentences, config.min_count);
  if (vocab.empty()) {
    throw ConfigError("empty vocabulary after min_count = " + std::to_string(config.min_count) +
                      " filtering");
  }
  std::vector<std::vector<int>> encoded;
  encoded.reserve(sentences.size());
  long total_words = 0;
  for (const auto& s : sentences) {
    std::vector<int> ids;
    for (const auto& t : s) {
      if (auto id = vocab.Id(t)) ids.push_back(*id);
    }
    total_words += static_cast<long>(ids.size());
    if (!ids.empty()) encoded.push_back(std::move(ids));
  }

  EmbeddingMatrix m = InitializeSgns(vocab, config);
  std::vector<double> input = m.input();
  std::vector<double> output = m.output();

  NegativeSampler sampler(vocab);
  TrainState st{&encoded, &config, &sampler, {}, input.data(), output.data(), total_words};
  st.keep_probability.resize(vocab.size(), 1.0);
  if (config.subsample > 0.0) {
    const double threshold = config.subsample * static_cast<double>(total_words);
    for (int i = 0; i < vocab.size(); ++i) {
      const double c = static_cast<double>(vocab.Count(i));
      st.keep_probability[i] = (std::sqrt(c / threshold) + 1.0) * threshold / c;
    }
  }

  if (stats != nullptr) *stats = SgnsTrainingStats();
  if (config.threads == 1) {
    Rng rng(DeriveSeed(config.seed, HashString("sgns-train")));
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      WorkerResult r = TrainSlice<internal::PlainAccess>(st, 0, encoded.size(), rng,
                                                         static_cast<long>(epoch) * total_words);
      if (stats != nullptr) {
        stats->epoch_mean_objective.push_back(r.pairs > 0 ? r.objective / r.pairs : 0.0);
        stats->pairs += r.pairs;
      }
    }
  } else {
    const std::size_t t = static_cast<std::size_t>(config.threads);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      std::vector<WorkerResult> results(t);
      std::vector<std::thread> workers;
      for (std::size_t w = 0; w < t; ++w) {
        const std::size_t begin = encoded.size() * w / t;
        const std::size_t end = encoded.size() * (w + 1) / t;
        workers.emplace_back([&, w, begin, end] {
          Rng rng(DeriveSeed(config.seed, HashString("sgns-train") ^ MixSeed(w + 1) ^
                                              MixSeed(static_cast<std::uint64_t>(epoch) << 32)));
          // Each worker advances its own share of the decay schedule.
          const long offset = static_cast<long>(epoch) * total_words;
          results[w] = TrainSlice<internal::RelaxedAccess>(st, begin, end, rng, offset);
        });
      }
      for (auto& th : workers) th.join();
      if (stats != nullptr) {
        double obj = 0.0;
        long pairs = 0;
        for (const auto& r : results) {
          obj += r.objective;
          pairs += r.pairs;
        }
        stats->epoch_mean_objective.push_back(pairs > 0 ? obj / pairs : 0.0);
        stats->pairs += pairs;
      }
    }
  }
  return EmbeddingMatrix(std::move(vocab), config.dim, std::move(input), std::move(output));
}

double MeanSgnsObjective(const EmbeddingMatrix& m, const std::vector<SgnsSample>& samples) {
  if (samples.empty()) return 0.0;
  if (!m.has_output_vectors()) throw ValidationError("objective needs output vectors");
  double total = 0.0;
  for (const SgnsSample& s : samples) {
    std::vector<std::span<const double>> negs;
    for (int n : s.negatives) negs.push_back(m.OutputVector(n));
    total += SgnsPairObjective(m.InputVector(s.center), m.OutputVector(s.context), negs);
  }
  return total / static_cast<double>(samples.size());
}

std::vector<std::vector<std::string>> SentencesFromDataset(const Dataset& dataset) {
  std::vector<std::vector<std::string>> out;
  out.reserve(dataset.reviews.size());
  for (const Review& r : dataset.reviews) out.push_back(LowercaseTokens(r));
  return out;
}

void SaveVectors(const std::filesystem::path& path, const EmbeddingMatrix& m) {
  auto out = internal::OpenForWrite(path);
  out << m.size() << ' ' << m.dim() << '\n';
  char buf[64];
  for (int i = 0; i < m.size(); ++i) {
    out << m.vocabulary().Token(i);
    for (double x : m.InputVector(i)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

EmbeddingMatrix LoadVectors(const std::filesystem::path& path) {
  auto in = internal::OpenForRead(path);
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(path.string() + " line " + std::to_string(line_no) + ": " + why, line_no);
  };
  auto split_ws = [](const std::string& s) {
    std::vector<std::string_view> parts;
    std::string_view rest(s);
    while (true) {
      const auto b = rest.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) break;
      rest = rest.substr(b);
      const auto e = rest.find_first_of(" \t\r");
      parts.push_back(rest.substr(0, e));
      if (e == std::string_view::npos) break;
      rest = rest.substr(e);
    }
    return parts;
  };
  auto parse_int = [&](std::string_view s) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) throw fail("bad header");
    return v;
  };

  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty vector file", 1);
  ++line_no;
  auto header = split_ws(line);
  if (header.size() != 2) throw fail("header must be \"V dim\"");
  const long rows = parse_int(header[0]);
  const long dim = parse_int(header[1]);
  if (dim < 1) throw fail("dim must be >= 1");

  Vocabulary vocab;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(rows * dim));
  while (std::getline(in, line)) {
    ++line_no;
    auto parts = split_ws(line);
    if (parts.empty()) continue;
    if (static_cast<long>(parts.size()) != dim + 1) {
      throw fail("expected " + std::to_string(dim) + " values, got " +
                 std::to_string(parts.size() - 1));
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(parts[i].data(), parts[i].data() + parts[i].size(), x);
      if (ec != std::errc() || ptr != parts[i].data() + parts[i].size()) {
        throw fail("bad number '" + std::string(parts[i]) + "'");
      }
      values.push_back(x);
    }
    try {
      vocab.Add(std::string(parts[0]), 0);
    } catch (const ValidationError& e) {
      throw fail(e.what());
    }
  }
  if (vocab.size() != rows) {
    throw ParseError(path.string() + ": header declares " + std::to_string(rows) +
                         " vectors, file has " + std::to_string(vocab.size()),
                     line_no);
  }
  return EmbeddingMatrix(std::move(vocab), static_cast<int>(dim), std::move(values));
}

std::optional<double> MaxSeedSimilarity(const EmbeddingMatrix& m, std::string_view token,
                                        const SeedList& seeds) {
  auto id = m.vocabulary().Id(token);
  if (!id) return std::nullopt;
  std::optional<double> best;
  for (const auto& [seed, score] : seeds.seeds) {
    auto sid = m.vocabulary().Id(seed);
    if (!sid) continue;
    const double s = m.SimilarityById(*id, *sid);
    if (!best || s > *best) best = s;
  }
  return best;
}

}  // namespace asc
