// End-to-end screening: generate a codebook, superimpose record signatures,
// then screen a query and compare the candidate count with its prediction.

#include <cstdio>
#include <vector>

#include "sic/analysis.hpp"
#include "sic/codegen.hpp"

int main() {
  const std::uint32_t n = 64, N = 30;
  const auto book =
      sic::build_codebook(N, sic::CodeSpec::fixed_weight(n, 7), 2024);

  // Ten toy records, each holding a handful of attributes.
  const std::vector<std::vector<std::uint32_t>> rows = {
      {0, 3, 7},  {1, 3},        {2, 8, 9, 11}, {4, 5, 6}, {0, 12, 29},
      {7, 8, 13}, {14, 15, 16},  {3, 7, 21},    {22, 23},  {0, 3, 7, 28},
  };

  std::vector<sic::BitPattern> sigs;
  std::vector<double> masses(n + 1, 0.0);
  for (const auto& row : rows) {
    sigs.push_back(book.encode(sic::BitPattern::from_positions(N, row)));
    masses[sigs.back().weight()] += 1.0 / rows.size();
  }

  const auto query = sic::BitPattern::from_positions(N, {3, 7});
  const auto query_sig = book.encode(query);

  std::printf("query signature weight %u of n = %u\n", query_sig.weight(), n);
  std::printf("candidates:");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < sigs.size(); ++i)
    if (query_sig.covered_by(sigs[i])) {
      std::printf(" %zu", i);
      ++hits;
    }
  std::printf("\n");

  // The ensemble estimate treats every signature as isotropic noise, so it
  // prices the false-drop background, not the true matches sitting on top.
  const double expected = sic::expected_candidates(
      n, masses, query_sig.weight(), rows.size());
  std::printf("%zu candidates; a blind database of %zu such signatures\n"
              "would contribute %.3g of them by cover coincidence.\n",
              hits, rows.size(), expected);
  std::printf("records 0, 7 and 9 hold both attributes; the rest of the\n"
              "candidate list, if any, is false drops.\n");
  return 0;
}
