// Finite topological spaces, stored by the minimal open neighbourhood of each
// point. The discrete topology is the default everywhere; a non-discrete one
// is only needed for bundles over spaces such as the four-point circle.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"
#include "ids.hpp"

namespace groupoidal {

  class FiniteTopology {
   public:
    FiniteTopology() = default;

    // `minimal_open[x]` must contain x and, with every y, all of
    // `minimal_open[y]`. Throws ValidationError("NotATopology").
    explicit FiniteTopology(std::vector<std::vector<int>> minimal_open) : _open(std::move(minimal_open)) {
      for (auto& u : _open) {
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
      }
      for (std::size_t x = 0; x < _open.size(); ++x) {
        auto const& u = _open[x];
        if (!std::binary_search(u.begin(), u.end(), int(x)))
          throw ValidationError("NotATopology", {std::to_string(x)}, "point missing from its neighbourhood");
        for (int y : u) {
          if (y < 0 || std::size_t(y) >= _open.size())
            throw ValidationError("NotATopology", {std::to_string(x)}, "neighbourhood leaves the space");
          if (!std::includes(u.begin(), u.end(), _open[y].begin(), _open[y].end()))
            throw ValidationError("NotATopology", {std::to_string(x), std::to_string(y)},
                                  "neighbourhoods are not nested");
        }
      }
    }

    static FiniteTopology discrete(std::size_t n) {
      std::vector<std::vector<int>> u(n);
      for (std::size_t i = 0; i < n; ++i)
        u[i] = {int(i)};
      return FiniteTopology(std::move(u));
    }

    std::size_t             size() const noexcept { return _open.size(); }
    std::vector<int> const& open_hull(int x) const { return _open[x]; }
    bool                    is_discrete() const {
      for (auto const& u : _open)
        if (u.size() != 1)
          return false;
      return true;
    }

    bool is_open(std::vector<int> const& set) const {
      std::vector<char> in(size(), 0);
      for (int x : set)
        in[x] = 1;
      for (int x : set)
        for (int y : _open[x])
          if (!in[y])
            return false;
      return true;
    }

    // Topology on `subset` (sorted), indexed by position in `subset`.
    FiniteTopology subspace(std::vector<int> const& subset) const {
      std::vector<int> pos(size(), -1);
      for (std::size_t i = 0; i < subset.size(); ++i)
        pos[subset[i]] = int(i);
      std::vector<std::vector<int>> u(subset.size());
      for (std::size_t i = 0; i < subset.size(); ++i)
        for (int y : _open[subset[i]])
          if (pos[y] >= 0)
            u[i].push_back(pos[y]);
      return FiniteTopology(std::move(u));
    }

    // Quotient topology along `class_of` (point -> class in [0, classes)).
    FiniteTopology quotient(std::vector<int> const& class_of, std::size_t classes) const {
      std::vector<std::vector<int>> members(classes);
      for (std::size_t x = 0; x < size(); ++x)
        members[class_of[x]].push_back(int(x));
      std::vector<std::vector<int>> u(classes);
      for (std::size_t c = 0; c < classes; ++c) {
        std::vector<char> in_class(classes, 0);
        std::vector<int>  frontier{int(c)};
        in_class[c] = 1;
        for (std::size_t i = 0; i < frontier.size(); ++i)
          for (int x : members[frontier[i]])
            for (int y : _open[x])
              if (!in_class[class_of[y]]) {
                in_class[class_of[y]] = 1;
                frontier.push_back(class_of[y]);
              }
        for (std::size_t d = 0; d < classes; ++d)
          if (in_class[d])
            u[c].push_back(int(d));
      }
      return FiniteTopology(std::move(u));
    }

    bool operator==(FiniteTopology const&) const = default;

   private:
    std::vector<std::vector<int>> _open;
  };

  // f(U_x) ⊆ U_f(x) for every x.
  inline bool is_continuous(std::vector<int> const& f, FiniteTopology const& src, FiniteTopology const& tgt) {
    for (std::size_t x = 0; x < src.size(); ++x) {
      auto const& v = tgt.open_hull(f[x]);
      for (int y : src.open_hull(int(x)))
        if (!std::binary_search(v.begin(), v.end(), f[y]))
          return false;
    }
    return true;
  }

  // f is defined on `domain` (f[x] < 0 elsewhere) with discrete values:
  // continuity means f is constant on U_x ∩ domain.
  inline bool is_locally_constant(std::vector<int> const& f, FiniteTopology const& top) {
    for (std::size_t x = 0; x < top.size(); ++x) {
      if (f[x] < 0)
        continue;
      for (int y : top.open_hull(int(x)))
        if (f[y] >= 0 && f[y] != f[x])
          return false;
    }
    return true;
  }

}  // namespace groupoidal
