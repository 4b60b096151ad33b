// Morita equivalence of finite groupoids: same number of orbits and
// isomorphic vertex groups orbit by orbit. A positive answer comes with an
// invertible witness bibundle, built from an essential equivalence.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bibundle.hpp"
#include "finite_group.hpp"
#include "groupoid_ops.hpp"

namespace groupoidal {

  struct MoritaResult {
    Verdict                          verdict = Verdict::no;
    std::string                      reason;
    std::vector<std::pair<int, int>> orbit_match;  // (orbit of G, orbit of H)
    std::optional<Functor>           equivalence;  // H -> G
    std::optional<Bibundle>          witness;      // over (G, H)
    std::optional<Bibundle>          inverse;      // over (H, G)
  };

  inline MoritaResult morita_equivalent(GroupoidRef const& g, GroupoidRef const& h, Budget& budget) {
    auto const&  G = *g;
    auto const&  H = *h;
    Orbits const og = orbit_space(G), oh = orbit_space(H);
    MoritaResult r;
    if (og.blocks.size() != oh.blocks.size()) {
      r.reason = "orbit counts differ: " + std::to_string(og.blocks.size()) + " vs " + std::to_string(oh.blocks.size());
      return r;
    }
    std::vector<FiniteGroup> vg, vh;
    for (auto const& b : og.blocks)
      vg.push_back(vertex_group(G, b.front()));
    for (auto const& b : oh.blocks)
      vh.push_back(vertex_group(H, b.front()));

    // Isomorphism is an equivalence relation, so greedy matching suffices.
    std::vector<char>             used(oh.blocks.size(), 0);
    std::vector<std::vector<int>> theta(og.blocks.size());  // H(b,b) index -> G(a,a) index
    std::vector<int>              match_of_h(oh.blocks.size(), -1);
    bool                          inconclusive = false;
    for (std::size_t i = 0; i < og.blocks.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < oh.blocks.size() && !found; ++j) {
        if (used[j])
          continue;
        auto iso = group_isomorphism(vh[j], vg[i], budget);
        if (iso.verdict == Verdict::inconclusive)
          inconclusive = true;
        if (iso.verdict == Verdict::yes) {
          used[j]       = 1;
          found         = true;
          theta[i]      = iso.map;
          match_of_h[j] = int(i);
          r.orbit_match.emplace_back(int(i), int(j));
        }
      }
      if (!found) {
        r.verdict = inconclusive ? Verdict::inconclusive : Verdict::no;
        r.reason  = "no orbit matches the vertex group (order " + std::to_string(vg[i].order()) + ") at "
                   + G.object_id(og.blocks[i].front());
        if (inconclusive)
          throw BudgetExceeded("SearchBudgetExceeded", budget.limit());
        return r;
      }
    }

    // Functor H -> G through the matched representatives.
    Functor f{h, g, std::vector<int>(H.num_objects()), std::vector<int>(H.num_morphisms())};
    std::vector<int> to_rep(H.num_objects());  // k_y : y -> representative
    for (std::size_t j = 0; j < oh.blocks.size(); ++j) {
      int b = oh.blocks[j].front();
      for (int y : oh.blocks[j]) {
        to_rep[y] = H.hom(y, b).front();
        f.obj[y]  = og.blocks[match_of_h[j]].front();
      }
    }
    for (std::size_t m = 0; m < H.num_morphisms(); ++m) {
      int         y = H.dom(int(m)), y2 = H.cod(int(m));
      int         j = oh.orbit_of[y];
      int         i = match_of_h[j];
      int         b = oh.blocks[j].front();
      int         a = og.blocks[i].front();
      int         loop = H.comp(to_rep[y2], H.comp(int(m), H.inv(to_rep[y])));
      auto const  hb   = H.hom(b, b);
      auto const  ga   = G.hom(a, a);
      std::size_t pos  = std::size_t(std::find(hb.begin(), hb.end(), loop) - hb.begin());
      f.mor[m]         = ga[theta[i][pos]];
    }
    validate_functor(f);
    r.equivalence = f;
    r.witness     = functor_bibundle(f);
    r.inverse     = invert(*r.witness, budget);
    r.verdict     = Verdict::yes;
    return r;
  }

  inline MoritaResult morita_equivalent(GroupoidRef const& g, GroupoidRef const& h) {
    Budget b;
    return morita_equivalent(g, h, b);
  }

}  // namespace groupoidal
