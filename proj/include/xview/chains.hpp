#pragma once

// Multi-view relationships: biclusters of neighbouring view pairs chained on
// their shared entities, then cleaned so no chain's entities are a subset of
// another's.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xview/dataset.hpp"
#include "xview/execution.hpp"
#include "xview/miner.hpp"

namespace xview {

inline constexpr double kDefaultChainThreshold = 0.4;
inline constexpr std::size_t kDefaultPathLimit = 100'000;

struct ViewSequence {
  std::vector<std::string> views;

  auto operator<=>(const ViewSequence&) const = default;
  bool operator==(const ViewSequence&) const = default;
};

using PairBiclusters = std::map<ViewPair, std::vector<Bicluster>>;

// One entry per unordered pair of `view_ids`, keyed in the given order
// (earlier id first). Pairs without a matrix map to an empty list.
PairBiclusters pairwise_biclusters(std::span<const std::string> view_ids,
                                   const std::map<ViewPair, RelationMatrix>& matrices,
                                   const MinerOptions& options = {});

// All orderings of `view_ids` (taken as canonical order) whose first view
// precedes the last, i.e. n!/2 sequences with reverse duplicates removed.
// Throws TooFewViews for n < 2.
std::vector<ViewSequence> view_sequences(std::span<const std::string> view_ids);

// Jaccard overlap of the two biclusters' element sets on `shared_view`.
// Throws NoSharedView when either bicluster does not span it.
double matching(const Bicluster& first, const Bicluster& second, std::string_view shared_view);

struct BiclusterChain {
  std::string chain_id;
  ViewSequence sequence;
  std::vector<Bicluster> links;  // links[k] spans sequence[k], sequence[k+1]
  // End views take the side of their only link; interior views take the
  // entities the two incident links share.
  std::map<std::string, std::vector<std::string>> entity_sets;
  std::vector<double> scores;  // matching score of links[k], links[k+1]

  std::vector<ElementRef> entities() const;  // sorted union over views

  bool operator==(const BiclusterChain&) const = default;
};

BiclusterChain make_chain(ViewSequence sequence, std::vector<Bicluster> links, std::vector<double> scores);

bool canonical_less(const BiclusterChain& x, const BiclusterChain& y);

struct ChainOptions {
  std::size_t path_limit = kDefaultPathLimit;  // candidate paths per sequence
  Execution exec = Execution::parallel;
};

// Full-length chains for every sequence: consecutive links must match with
// score >= threshold and > 0. Output is canonically sorted. Throws
// InvalidThreshold outside [0, 1] and PathLimitExceeded past the cap.
std::vector<BiclusterChain> build_chains(std::span<const ViewSequence> sequences, const PairBiclusters& pair_biclusters,
                                         double threshold, const ChainOptions& options = {});

// Keeps a chain iff its entity set is not a strict subset of another chain's;
// of chains with equal entity sets only the smallest chain_id survives.
std::vector<BiclusterChain> clean_chains(std::vector<BiclusterChain> chains, Execution exec = Execution::parallel);

// Mining, sequencing, chaining and cleaning over `view_ids` of a dataset.
std::vector<BiclusterChain> compute_chains(const Dataset& dataset, std::span<const std::string> view_ids,
                                           double threshold, const MinerOptions& miner = {},
                                           const ChainOptions& options = {});

void validate_threshold(double threshold);

}  // namespace xview
