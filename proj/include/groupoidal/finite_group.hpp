// Finite groups given by a multiplication table, and a bounded isomorphism
// search used for vertex groups and Morita comparisons.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "error.hpp"
#include "ids.hpp"

namespace groupoidal {

  class FiniteGroup {
   public:
    FiniteGroup() : FiniteGroup({"e"}, {0}) {}

    // `mult[a * n + b]` is the index of a*b. Throws ValidationError("NotAGroup").
    FiniteGroup(std::vector<std::string> names, std::vector<int> mult)
        : _names(std::move(names)), _mult(std::move(mult)) {
      std::size_t const n = _names.size();
      if (n == 0 || _mult.size() != n * n)
        throw ValidationError("NotAGroup", {}, "table size does not match element count");
      for (int v : _mult)
        if (v < 0 || static_cast<std::size_t>(v) >= n)
          throw ValidationError("NotAGroup", {}, "product outside the group");
      _identity = -1;
      for (std::size_t e = 0; e < n && _identity < 0; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
          ok = mul(int(e), int(a)) == int(a) && mul(int(a), int(e)) == int(a);
        if (ok)
          _identity = int(e);
      }
      if (_identity < 0)
        throw ValidationError("NotAGroup", {}, "no identity element");
      _inverse.assign(n, -1);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
          if (mul(int(a), int(b)) == _identity && mul(int(b), int(a)) == _identity)
            _inverse[a] = int(b);
        if (_inverse[a] < 0)
          throw ValidationError("NotAGroup", {_names[a]}, "element without inverse");
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (mul(mul(int(a), int(b)), int(c)) != mul(int(a), mul(int(b), int(c))))
              throw ValidationError("NotAGroup", {_names[a], _names[b], _names[c]}, "not associative");
    }

    static FiniteGroup cyclic(int k) {
      if (k < 1)
        throw ValidationError("BadParameter", {std::to_string(k)}, "cyclic group order must be positive");
      std::vector<std::string> names;
      std::vector<int>         mult(std::size_t(k) * k);
      for (int i = 0; i < k; ++i) {
        names.push_back("r" + padded(std::size_t(i), std::size_t(k)));
        for (int j = 0; j < k; ++j)
          mult[std::size_t(i) * k + j] = (i + j) % k;
      }
      return FiniteGroup(std::move(names), std::move(mult));
    }

    static FiniteGroup product(FiniteGroup const& a, FiniteGroup const& b) {
      std::size_t const        na = a.order(), nb = b.order();
      std::vector<std::string> names;
      std::vector<int>         mult(na * nb * na * nb);
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
          names.push_back("(" + a.name(int(i)) + "," + b.name(int(j)) + ")");
      for (std::size_t x = 0; x < na * nb; ++x)
        for (std::size_t y = 0; y < na * nb; ++y)
          mult[x * na * nb + y] = a.mul(int(x / nb), int(y / nb)) * int(nb) + b.mul(int(x % nb), int(y % nb));
      return FiniteGroup(std::move(names), std::move(mult));
    }

    std::size_t        order() const noexcept { return _names.size(); }
    int                identity() const noexcept { return _identity; }
    int                mul(int a, int b) const { return _mult[std::size_t(a) * order() + b]; }
    int                inv(int a) const { return _inverse[a]; }
    std::string const& name(int a) const { return _names[a]; }
    std::vector<std::string> const& names() const noexcept { return _names; }
    std::vector<int> const&         table() const noexcept { return _mult; }

    int index_of(std::string const& nm) const {
      for (std::size_t i = 0; i < _names.size(); ++i)
        if (_names[i] == nm)
          return int(i);
      throw SchemaError("unknown group element", {nm});
    }

    int element_order(int a) const {
      int k = 1;
      for (int x = a; x != _identity; x = mul(x, a))
        ++k;
      return k;
    }

    bool is_abelian() const {
      for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = 0; b < a; ++b)
          if (mul(int(a), int(b)) != mul(int(b), int(a)))
            return false;
      return true;
    }

    // Sorted element indices of the subgroup generated by `gens`.
    std::vector<int> closure(std::vector<int> const& gens) const {
      std::vector<char> seen(order(), 0);
      std::vector<int>  out{_identity};
      seen[_identity] = 1;
      for (std::size_t i = 0; i < out.size(); ++i)
        for (int g : gens) {
          int y = mul(out[i], g);
          if (!seen[y]) {
            seen[y] = 1;
            out.push_back(y);
          }
        }
      std::sort(out.begin(), out.end());
      return out;
    }

    // Greedy generating set of the subgroup on `elems` (closed, any order):
    // repeatedly adds an element of largest order not yet generated. Empty
    // for the trivial group.
    std::vector<int> subgroup_generators(std::vector<int> elems) const {
      std::sort(elems.begin(), elems.end());
      std::vector<int> gens;
      std::vector<int> have = closure(gens);
      while (have.size() < elems.size()) {
        int best = -1;
        for (int a : elems) {
          if (std::binary_search(have.begin(), have.end(), a))
            continue;
          if (best < 0 || element_order(a) > element_order(best))
            best = a;
        }
        gens.push_back(best);
        have = closure(gens);
      }
      return gens;
    }

    std::vector<int> generators() const {
      std::vector<int> all(order());
      for (std::size_t a = 0; a < order(); ++a)
        all[a] = int(a);
      return subgroup_generators(all);
    }

    // Subgroup on the given (closed) element set, names kept.
    FiniteGroup subgroup(std::vector<int> const& elems) const {
      std::vector<int> pos(order(), -1);
      for (std::size_t i = 0; i < elems.size(); ++i)
        pos[elems[i]] = int(i);
      std::vector<std::string> names;
      std::vector<int>         mult(elems.size() * elems.size());
      for (std::size_t i = 0; i < elems.size(); ++i) {
        names.push_back(_names[elems[i]]);
        for (std::size_t j = 0; j < elems.size(); ++j) {
          int p = pos[mul(elems[i], elems[j])];
          if (p < 0)
            throw ValidationError("NotASubgroup", {_names[elems[i]], _names[elems[j]]});
          mult[i * elems.size() + j] = p;
        }
      }
      return FiniteGroup(std::move(names), std::move(mult));
    }

   private:
    std::vector<std::string> _names;
    std::vector<int>         _mult;
    int                      _identity = 0;
    std::vector<int>         _inverse;
  };

  enum class Verdict { yes, no, inconclusive };

  inline char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::yes:
        return "yes";
      case Verdict::no:
        return "no";
      default:
        return "inconclusive";
    }
  }

  struct GroupIsomorphism {
    Verdict          verdict = Verdict::no;
    std::vector<int> map;  // element of the first group -> element of the second
  };

  // Backtracking over images of a generating set, pruned by element orders.
  // Gives up with `inconclusive` once `budget` nodes have been visited.
  inline GroupIsomorphism group_isomorphism(FiniteGroup const& g, FiniteGroup const& h, Budget& budget) {
    std::size_t const n = g.order();
    if (h.order() != n)
      return {Verdict::no, {}};
    auto order_profile = [](FiniteGroup const& x) {
      std::vector<int> p;
      for (std::size_t a = 0; a < x.order(); ++a)
        p.push_back(x.element_order(int(a)));
      std::sort(p.begin(), p.end());
      return p;
    };
    if (order_profile(g) != order_profile(h) || g.is_abelian() != h.is_abelian())
      return {Verdict::no, {}};

    std::vector<int> const gens = g.generators();
    std::vector<int>       images(gens.size(), -1);

    auto extend = [&]() -> std::vector<int> {
      std::vector<int> map(n, -1);
      std::vector<int> queue{g.identity()};
      map[g.identity()] = h.identity();
      for (std::size_t i = 0; i < queue.size(); ++i) {
        int x = queue[i];
        for (std::size_t s = 0; s < gens.size(); ++s) {
          int y  = g.mul(x, gens[s]);
          int iy = h.mul(map[x], images[s]);
          if (map[y] < 0) {
            map[y] = iy;
            queue.push_back(y);
          } else if (map[y] != iy) {
            return {};
          }
        }
      }
      std::vector<char> hit(n, 0);
      for (int v : map) {
        if (hit[v])
          return {};
        hit[v] = 1;
      }
      return map;
    };

    bool             out_of_budget = false;
    std::vector<int> found;
    auto             search = [&](auto&& self, std::size_t k) -> bool {
      if (!budget.try_tick()) {
        out_of_budget = true;
        return false;
      }
      if (k == gens.size()) {
        found = extend();
        return !found.empty();
      }
      int const want = g.element_order(gens[k]);
      for (std::size_t c = 0; c < n; ++c) {
        if (h.element_order(int(c)) != want)
          continue;
        images[k] = int(c);
        if (self(self, k + 1))
          return true;
        if (out_of_budget)
          return false;
      }
      return false;
    };
    if (search(search, 0))
      return {Verdict::yes, found};
    return {out_of_budget ? Verdict::inconclusive : Verdict::no, {}};
  }

}  // namespace groupoidal
