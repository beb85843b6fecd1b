#include "xview/chains.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iterator>
#include <numeric>
#include <omp.h>
#include <set>

#include "xview/error.hpp"
#include "xview/hash.hpp"

namespace xview {

PairBiclusters pairwise_biclusters(std::span<const std::string> view_ids,
                                   const std::map<ViewPair, RelationMatrix>& matrices, const MinerOptions& options) {
  PairBiclusters out;
  for (std::size_t i = 0; i < view_ids.size(); ++i) {
    for (std::size_t j = i + 1; j < view_ids.size(); ++j) {
      ViewPair key{view_ids[i], view_ids[j]};
      auto& slot = out[key];
      if (auto it = matrices.find(key); it != matrices.end()) {
        slot = enumerate_closed_biclusters(it->second, options);
      } else if (auto rt = matrices.find({key.second, key.first}); rt != matrices.end()) {
        slot = enumerate_closed_biclusters(rt->second, options);
      }
    }
  }
  return out;
}

std::vector<ViewSequence> view_sequences(std::span<const std::string> view_ids) {
  if (view_ids.size() < 2) throw Error(Errc::too_few_views, "a view sequence needs at least two views");
  if (std::set<std::string>(view_ids.begin(), view_ids.end()).size() != view_ids.size()) {
    throw Error(Errc::invalid_argument, "view sequence ids must be distinct");
  }
  std::vector<std::size_t> order(view_ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<ViewSequence> out;
  do {
    if (order.front() > order.back()) continue;
    ViewSequence seq;
    for (auto k : order) seq.views.push_back(view_ids[k]);
    out.push_back(std::move(seq));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

namespace {

std::size_t intersection_size(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::size_t n = 0;
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

double matching(const Bicluster& first, const Bicluster& second, std::string_view shared_view) {
  const auto* x = first.side(shared_view);
  const auto* y = second.side(shared_view);
  if (x == nullptr || y == nullptr) {
    throw Error(Errc::no_shared_view, "biclusters do not share view '" + std::string(shared_view) + "'");
  }
  const std::size_t inter = intersection_size(*x, *y);
  const std::size_t uni = x->size() + y->size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<ElementRef> BiclusterChain::entities() const {
  std::vector<ElementRef> out;
  for (const auto& [view, ids] : entity_sets) {
    for (const auto& id : ids) out.push_back({view, id});
  }
  std::sort(out.begin(), out.end());
  return out;
}

BiclusterChain make_chain(ViewSequence sequence, std::vector<Bicluster> links, std::vector<double> scores) {
  BiclusterChain chain;
  const auto& views = sequence.views;
  if (views.size() < 2 || links.size() + 1 != views.size()) {
    throw Error(Errc::invalid_argument, "a chain over n views needs n-1 links");
  }
  for (std::size_t k = 0; k < views.size(); ++k) {
    const std::vector<std::string>* left = k > 0 ? links[k - 1].side(views[k]) : nullptr;
    const std::vector<std::string>* right = k < links.size() ? links[k].side(views[k]) : nullptr;
    if ((k > 0 && left == nullptr) || (k < links.size() && right == nullptr)) {
      throw Error(Errc::no_shared_view, "link does not span view '" + views[k] + "'");
    }
    std::vector<std::string> ids;
    if (left && right) {
      std::set_intersection(left->begin(), left->end(), right->begin(), right->end(), std::back_inserter(ids));
    } else {
      ids = left ? *left : *right;
    }
    chain.entity_sets[views[k]] = std::move(ids);
  }

  std::string text;
  for (const auto& v : views) text += v + '\x1e';
  text += '\x1f';
  for (const auto& l : links) text += l.bicluster_id + '\x1e';
  chain.chain_id = content_id("chain", text);
  chain.sequence = std::move(sequence);
  chain.links = std::move(links);
  chain.scores = std::move(scores);
  return chain;
}

bool canonical_less(const BiclusterChain& x, const BiclusterChain& y) {
  if (x.sequence != y.sequence) return x.sequence < y.sequence;
  for (std::size_t k = 0; k < x.links.size() && k < y.links.size(); ++k) {
    if (canonical_less(x.links[k], y.links[k])) return true;
    if (canonical_less(y.links[k], x.links[k])) return false;
  }
  if (x.links.size() != y.links.size()) return x.links.size() < y.links.size();
  return x.chain_id < y.chain_id;
}

void validate_threshold(double threshold) {
  if (!std::isfinite(threshold) || threshold < 0.0 || threshold > 1.0) {
    throw Error(Errc::invalid_threshold, "threshold must be a fraction in [0, 1]");
  }
}

namespace {

const std::vector<Bicluster>* find_pair(const PairBiclusters& pairs, const std::string& a, const std::string& b) {
  if (auto it = pairs.find({a, b}); it != pairs.end()) return &it->second;
  if (auto it = pairs.find({b, a}); it != pairs.end()) return &it->second;
  return nullptr;
}

std::vector<BiclusterChain> chains_for_sequence(const ViewSequence& seq, const PairBiclusters& pairs, double threshold,
                                                std::size_t path_limit) {
  const auto& views = seq.views;
  std::vector<const std::vector<Bicluster>*> layers;
  for (std::size_t k = 0; k + 1 < views.size(); ++k) {
    const auto* layer = find_pair(pairs, views[k], views[k + 1]);
    if (layer == nullptr || layer->empty()) return {};
    layers.push_back(layer);
  }

  std::vector<BiclusterChain> out;
  std::vector<std::size_t> path;
  std::vector<double> scores;
  std::size_t explored = 0;

  auto descend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == layers.size()) {
      std::vector<Bicluster> links;
      for (std::size_t k = 0; k < path.size(); ++k) links.push_back((*layers[k])[path[k]]);
      out.push_back(make_chain(seq, std::move(links), scores));
      return;
    }
    const auto& layer = *layers[depth];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (depth > 0) {
        double s = matching((*layers[depth - 1])[path.back()], layer[i], views[depth]);
        if (s <= 0.0 || s < threshold) continue;
        scores.push_back(s);
      }
      if (++explored > path_limit) {
        throw Error(Errc::path_limit_exceeded,
                    "sequence explored more than " + std::to_string(path_limit) + " candidate paths",
                    {{"path_limit", std::to_string(path_limit)}});
      }
      path.push_back(i);
      self(self, depth + 1);
      path.pop_back();
      if (depth > 0) scores.pop_back();
    }
  };
  descend(descend, 0);
  return out;
}

}  // namespace

std::vector<BiclusterChain> build_chains(std::span<const ViewSequence> sequences, const PairBiclusters& pair_biclusters,
                                         double threshold, const ChainOptions& options) {
  validate_threshold(threshold);
  std::vector<std::vector<BiclusterChain>> per_sequence(sequences.size());

  if (options.exec == Execution::serial) {
    for (std::size_t s = 0; s < sequences.size(); ++s) {
      per_sequence[s] = chains_for_sequence(sequences[s], pair_biclusters, threshold, options.path_limit);
    }
  } else {
    std::vector<std::exception_ptr> errors(sequences.size());
    const auto n = static_cast<std::int64_t>(sequences.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < n; ++s) {
      auto k = static_cast<std::size_t>(s);
      try {
        per_sequence[k] = chains_for_sequence(sequences[k], pair_biclusters, threshold, options.path_limit);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<BiclusterChain> out;
  for (auto& chunk : per_sequence) {
    out.insert(out.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
  }
  std::sort(out.begin(), out.end(), [](const BiclusterChain& x, const BiclusterChain& y) { return canonical_less(x, y); });
  return out;
}

std::vector<BiclusterChain> clean_chains(std::vector<BiclusterChain> chains, Execution exec) {
  std::sort(chains.begin(), chains.end(), [](const BiclusterChain& x, const BiclusterChain& y) { return canonical_less(x, y); });
  std::vector<std::vector<ElementRef>> sets;
  sets.reserve(chains.size());
  for (const auto& c : chains) sets.push_back(c.entities());

  const std::size_t n = chains.size();
  std::vector<char> keep(n, 1);
  auto judge = [&](std::size_t i) {
    for (std::size_t j = 0; j < n && keep[i]; ++j) {
      if (j == i || sets[j].size() < sets[i].size()) continue;
      if (!std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end())) continue;
      if (sets[j].size() > sets[i].size()) {
        keep[i] = 0;
      } else if (std::tie(chains[j].chain_id, j) < std::tie(chains[i].chain_id, i)) {
        keep[i] = 0;
      }
    }
  };

  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) judge(i);
  } else {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) judge(static_cast<std::size_t>(i));
  }

  std::vector<BiclusterChain> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) out.push_back(std::move(chains[i]));
  }
  return out;
}

std::vector<BiclusterChain> compute_chains(const Dataset& dataset, std::span<const std::string> view_ids,
                                           double threshold, const MinerOptions& miner, const ChainOptions& options) {
  validate_threshold(threshold);
  auto views = dataset.canonical_views(view_ids);
  auto pairs = pairwise_biclusters(views, dataset.relation_matrices(), miner);
  auto sequences = view_sequences(views);
  return clean_chains(build_chains(sequences, pairs, threshold, options), options.exec);
}

}  // namespace xview
