// Serial reference vs OpenMP kernels on synthetic inputs.

#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>
#include <random>
#include <string>
#include <vector>

#include "xview/chains.hpp"
#include "xview/cooccurrence.hpp"
#include "xview/layout.hpp"
#include "xview/miner.hpp"

using namespace xview;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
  return d.count() / reps;
}

void report(const char* name, const std::function<void(Execution)>& kernel, int reps) {
  double serial = time_ms([&] { kernel(Execution::serial); }, reps);
  double parallel = time_ms([&] { kernel(Execution::parallel); }, reps);
  std::printf("%-22s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
  std::fflush(stdout);
}

std::string id(char prefix, int i) { return prefix + std::to_string(1000 + i); }

RelationMatrix random_matrix(std::mt19937& rng, int rows, int cols, double density) {
  std::vector<std::string> r, c;
  for (int i = 0; i < rows; ++i) r.push_back(id('R', i));
  for (int j = 0; j < cols; ++j) c.push_back(id('C', j));
  RelationMatrix m("R", "C", r, c);
  std::bernoulli_distribution on(density);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), on(rng));
  }
  return m;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::fflush(stdout);
  std::mt19937 rng(7);

  auto m = random_matrix(rng, 60, 30, 0.25);
  report("miner 60x30 d=0.25", [&](Execution e) { enumerate_closed_biclusters(m, {2, 2, e}); }, 3);

  std::vector<Document> docs;
  std::uniform_int_distribution<int> pick(0, 199);
  for (int d = 0; d < 4000; ++d) {
    Document doc{"d" + std::to_string(d), "", std::string(64, 'x'), {}};
    for (int k = 0; k < 12; ++k) doc.occurrences.push_back({{k % 2 ? "P" : "L", id('E', pick(rng))}, 0, 1});
    docs.push_back(std::move(doc));
  }
  report("cooccurrence 4000 docs", [&](Execution e) { derive_cooccurrence(docs, "P", "L", e); }, 5);

  std::vector<LayoutItem> items;
  std::bernoulli_distribution member(0.1);
  for (int i = 0; i < 600; ++i) {
    LayoutItem item{"r" + std::to_string(i), {}};
    for (int k = 0; k < 300; ++k) {
      if (member(rng)) item.entity_sets["V"].push_back(id('E', k));
    }
    if (item.entity_sets["V"].empty()) item.entity_sets["V"].push_back(id('E', 0));
    items.push_back(std::move(item));
  }
  auto vectors = vectorize(items);
  report("distances 600 rels", [&](Execution e) { pairwise_distances(vectors, e); }, 3);

  PairBiclusters pairs;
  std::vector<std::string> views{"A", "B", "C", "D"};
  for (std::size_t i = 0; i < views.size(); ++i) {
    for (std::size_t j = i + 1; j < views.size(); ++j) {
      std::vector<std::string> ids;
      for (int k = 0; k < 10; ++k) ids.push_back(id('E', k));
      RelationMatrix mm(views[i], views[j], ids, ids);
      for (std::size_t r = 0; r < 10; ++r) {
        for (std::size_t c = 0; c < 10; ++c) mm.set(r, c, std::bernoulli_distribution(0.4)(rng));
      }
      pairs[{views[i], views[j]}] = enumerate_closed_biclusters(mm);
    }
  }
  auto seqs = view_sequences(views);
  report("chains 4 views", [&](Execution e) {
    ChainOptions o{10'000'000, e};
    clean_chains(build_chains(seqs, pairs, 0.5, o), e);
  }, 1);
  return 0;
}
