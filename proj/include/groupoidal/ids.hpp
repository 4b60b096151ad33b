// Small helpers for string-id <-> dense-index bookkeeping.

#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace groupoidal {

  // An ordered set of string ids, sorted lexicographically, with index lookup.
  class IdTable {
   public:
    IdTable() = default;

    // Sorts and indexes; duplicates raise a SchemaError naming the duplicate.
    explicit IdTable(std::vector<std::string> ids) : _ids(std::move(ids)) {
      std::sort(_ids.begin(), _ids.end());
      for (std::size_t i = 0; i < _ids.size(); ++i) {
        if (i > 0 && _ids[i] == _ids[i - 1])
          throw SchemaError("duplicate id", {_ids[i]});
        _index.emplace(_ids[i], static_cast<int>(i));
      }
    }

    std::size_t                     size() const noexcept { return _ids.size(); }
    std::string const&              operator[](int i) const { return _ids[static_cast<std::size_t>(i)]; }
    std::vector<std::string> const& ids() const noexcept { return _ids; }

    // -1 when absent.
    int find(std::string const& id) const {
      auto it = _index.find(id);
      return it == _index.end() ? -1 : it->second;
    }

    int at(std::string const& id, char const* what = "id") const {
      int i = find(id);
      if (i < 0)
        throw SchemaError(std::string("unknown ") + what, {id});
      return i;
    }

    bool operator==(IdTable const& other) const { return _ids == other._ids; }

   private:
    std::vector<std::string>             _ids;
    std::unordered_map<std::string, int> _index;
  };

  // Disjoint-set forest with path halving; `find` returns the root.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n) {
      for (std::size_t i = 0; i < n; ++i)
        _parent[i] = static_cast<int>(i);
    }
    int find(int x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }
    // Keeps the smaller index as root so representatives are canonical.
    void unite(int a, int b) {
      a = find(a);
      b = find(b);
      if (a == b)
        return;
      if (b < a)
        std::swap(a, b);
      _parent[b] = a;
    }

   private:
    std::vector<int> _parent;
  };

  inline std::string join(std::vector<std::string> const& parts, std::string const& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i)
        s += sep;
      s += parts[i];
    }
    return s;
  }

  // Zero-padded decimal label so lexicographic and numeric order agree.
  inline std::string padded(std::size_t i, std::size_t count) {
    std::size_t width = 1;
    for (std::size_t m = count > 0 ? count - 1 : 0; m >= 10; m /= 10)
      ++width;
    std::string s = std::to_string(i);
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
  }

}  // namespace groupoidal
