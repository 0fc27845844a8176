#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace upm::detail {

// Canonical string for a node-colored directed graph: two graphs get the same
// string iff they are isomorphic respecting colors and edge direction.
//
// Scheme: iterated color refinement (a node's color is joined with the
// multisets of its predecessor and successor colors until a fixpoint), then
// individualisation on the first non-singleton class, recursing over all
// inequivalent members and keeping the lexicographically smallest leaf
// serialization. Members of a class with identical in/out neighbor sets are
// interchangeable by an automorphism, so only one of them is branched on.
struct ColoredDigraph {
  std::vector<std::string> colors;        // one per node
  std::vector<std::vector<int>> adj;      // out-edges
};

class Canonizer {
 public:
  explicit Canonizer(const ColoredDigraph& g) : g_(g), n_(g.colors.size()) {
    radj_.resize(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      for (int v : g_.adj[u]) radj_[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
    }
  }

  std::string run() {
    if (n_ == 0) return "n0;";
    std::vector<int> rank = initial_ranks();
    refine(rank);
    best_.clear();
    search(rank);
    return best_;
  }

 private:
  std::vector<int> initial_ranks() const {
    std::vector<std::string> sorted(g_.colors);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> rank(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      rank[v] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), g_.colors[v]) -
          sorted.begin());
    }
    return rank;
  }

  // Signature: (rank, sorted succ ranks, sorted pred ranks).
  using Sig = std::vector<int>;

  void refine(std::vector<int>& rank) const {
    std::size_t classes = count_classes(rank);
    for (;;) {
      std::vector<Sig> sig(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        Sig& s = sig[v];
        s.push_back(rank[v]);
        s.push_back(-1);  // separator
        std::vector<int> out;
        for (int w : g_.adj[v]) out.push_back(rank[static_cast<std::size_t>(w)]);
        std::sort(out.begin(), out.end());
        s.insert(s.end(), out.begin(), out.end());
        s.push_back(-1);
        std::vector<int> in;
        for (int w : radj_[v]) in.push_back(rank[static_cast<std::size_t>(w)]);
        std::sort(in.begin(), in.end());
        s.insert(s.end(), in.begin(), in.end());
      }
      std::vector<Sig> uniq(sig);
      std::sort(uniq.begin(), uniq.end());
      uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
      for (std::size_t v = 0; v < n_; ++v) {
        rank[v] = static_cast<int>(
            std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
      }
      std::size_t next = uniq.size();
      if (next == classes) return;
      classes = next;
    }
  }

  static std::size_t count_classes(const std::vector<int>& rank) {
    std::vector<int> tmp(rank);
    std::sort(tmp.begin(), tmp.end());
    tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
    return tmp.size();
  }

  void search(const std::vector<int>& rank) {
    // Find the first non-singleton class.
    std::vector<std::vector<int>> cells(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      cells[static_cast<std::size_t>(rank[v])].push_back(static_cast<int>(v));
    }
    const std::vector<int>* target = nullptr;
    for (const auto& cell : cells) {
      if (cell.size() > 1) {
        target = &cell;
        break;
      }
    }
    if (!target) {
      consider_leaf(rank);
      return;
    }
    // Branch on one representative per neighborhood-equal orbit.
    std::vector<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (int v : *target) {
      std::vector<int> out(g_.adj[static_cast<std::size_t>(v)]);
      std::vector<int> in(radj_[static_cast<std::size_t>(v)]);
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
      bool dup = false;
      for (const auto& s : seen) {
        if (s.first == out && s.second == in) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      seen.emplace_back(std::move(out), std::move(in));
      std::vector<int> next(rank);
      for (std::size_t u = 0; u < n_; ++u) next[u] *= 2;
      next[static_cast<std::size_t>(v)] -= 1;
      refine(next);
      search(next);
    }
  }

  void consider_leaf(const std::vector<int>& rank) {
    // rank is discrete: it is a permutation of 0..n-1.
    std::vector<int> order(n_);
    for (std::size_t v = 0; v < n_; ++v) order[static_cast<std::size_t>(rank[v])] = static_cast<int>(v);
    std::string s;
    s += "n";
    s += std::to_string(n_);
    s += ";";
    for (int v : order) {
      const std::string& c = g_.colors[static_cast<std::size_t>(v)];
      s += std::to_string(c.size());
      s += ":";
      s += c;
      s += ";";
    }
    s += "e:";
    std::vector<std::pair<int, int>> edges;
    for (std::size_t u = 0; u < n_; ++u) {
      for (int w : g_.adj[u]) {
        edges.emplace_back(rank[u], rank[static_cast<std::size_t>(w)]);
      }
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) {
      s += std::to_string(a);
      s += ">";
      s += std::to_string(b);
      s += ",";
    }
    if (best_.empty() || s < best_) best_ = std::move(s);
  }

  const ColoredDigraph& g_;
  std::size_t n_;
  std::vector<std::vector<int>> radj_;
  std::string best_;
};

inline std::string canonical_string(const ColoredDigraph& g) {
  return Canonizer(g).run();
}

}  // namespace upm::detail
