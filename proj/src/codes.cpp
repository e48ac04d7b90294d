#include "pcode/codes.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace pcode {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::perfect_code: return "perfect_code";
    case Verdict::not_perfect_code: return "not_perfect_code";
    default: return "inconclusive";
  }
}

// ------------------------------------------------------------------ phi_check

namespace {

template <typename Range>
PhiResult phi_impl(const Range& scope, const Subgroup& h, bool collect) {
  const Group& g = h.parent();
  std::vector<Elem> members;
  members.reserve(h.size());
  h.for_each([&](Elem x) {
    members.push_back(x);
    return true;
  });
  const Elem e = g.identity();

  PhiResult r;
  scope.for_each([&](Elem x) {
    Elem sq = g.mul(x, x);
    if (!h.contains(sq)) return true;
    ++r.bad_square_count;
    for (Elem m : members) {
      Elem y = g.mul(x, m);
      if (g.mul(y, y) == e) {
        if (collect) r.witness_map.emplace_back(x, m);
        return true;
      }
    }
    r.holds = false;
    r.counterexample = x;
    return false;  // first counterexample in index order
  });
  return r;
}

}  // namespace

PhiResult phi_check(const Group& scope, const Subgroup& h, bool collect_witnesses) {
  if (&scope != &h.parent())
    throw std::invalid_argument("phi_check: scope and subgroup belong to different groups");
  if (!scope.enumerable())
    throw std::invalid_argument("phi_check: scope is not enumerable");
  return phi_impl(scope, h, collect_witnesses);
}

PhiResult phi_check(const Subgroup& scope, const Subgroup& h, bool collect_witnesses) {
  if (&scope.parent() != &h.parent())
    throw std::invalid_argument("phi_check: scope and subgroup belong to different groups");
  if (!scope.enumerable())
    throw std::invalid_argument("phi_check: scope is not enumerable");
  return phi_impl(scope, h, collect_witnesses);
}

// ------------------------------------------------------------- backtracking

namespace {

struct BacktrackState {
  const Group* g;
  const CosetPartition* part;
  std::vector<std::optional<Elem>> chosen;
  std::size_t unchosen;

  bool candidate_ok(std::uint32_t c, Elem x, std::uint32_t& partner) const {
    Elem xi = g->inv(x);
    std::uint32_t c2 = part->coset_of.at(xi);
    partner = c2;
    if (c2 == c) return xi == x;
    if (chosen[c2]) return *chosen[c2] == xi;
    return true;
  }

  bool solve() {
    if (unchosen == 0) return true;
    // Fewest-valid-candidates coset first; ties by lowest id.
    std::uint32_t best = 0;
    std::size_t best_count = SIZE_MAX;
    for (std::uint32_t c = 0; c < part->cells.size(); ++c) {
      if (chosen[c]) continue;
      std::size_t count = 0;
      std::uint32_t partner;
      for (Elem x : part->cells[c])
        if (candidate_ok(c, x, partner)) ++count;
      if (count < best_count) {
        best_count = count;
        best = c;
        if (count == 0) break;
      }
    }
    if (best_count == 0) return false;

    const std::uint32_t c = best;
    for (Elem x : part->cells[c]) {
      std::uint32_t c2;
      if (!candidate_ok(c, x, c2)) continue;
      Elem xi = g->inv(x);
      bool fixes_partner = (c2 != c) && !chosen[c2];
      chosen[c] = x;
      --unchosen;
      if (fixes_partner) {
        chosen[c2] = xi;
        --unchosen;
      }
      if (solve()) return true;
      chosen[c].reset();
      ++unchosen;
      if (fixes_partner) {
        chosen[c2].reset();
        ++unchosen;
      }
    }
    return false;
  }
};

}  // namespace

TransversalSearchResult transversal_search_backtracking(const Group& g, const Subgroup& h,
                                                        std::uint64_t limit,
                                                        bool require_identity) {
  if (!g.enumerable())
    throw std::invalid_argument("transversal search needs an enumerable group");
  const std::uint64_t index = g.order() / h.size();
  if (index > limit) return {SearchStatus::inconclusive, std::nullopt};

  CosetPartition part = left_cosets(g, h, g.order());
  BacktrackState st{&g, &part, std::vector<std::optional<Elem>>(part.cells.size()),
                    part.cells.size()};
  if (require_identity) {
    std::uint32_t ec = part.coset_of.at(g.identity());
    st.chosen[ec] = g.identity();
    --st.unchosen;
  }
  if (!st.solve()) return {SearchStatus::none, std::nullopt};

  TransversalWitness w;
  for (const auto& x : st.chosen) w.elements.push_back(*x);
  std::sort(w.elements.begin(), w.elements.end());
  w.contains_identity =
      std::binary_search(w.elements.begin(), w.elements.end(), g.identity());
  return {SearchStatus::found, std::move(w)};
}

// ----------------------------------------------------------------- matching

TransversalSearchResult transversal_search_matching(const Group& g, const Subgroup& h,
                                                    std::uint64_t limit,
                                                    bool require_identity) {
  if (!g.enumerable())
    throw std::invalid_argument("transversal search needs an enumerable group");
  const std::uint64_t index = g.order() / h.size();
  if (index > limit) return {SearchStatus::inconclusive, std::nullopt};

  CosetPartition part = left_cosets(g, h, g.order());
  const std::uint32_t nc = static_cast<std::uint32_t>(part.cells.size());
  const Elem e = g.identity();

  std::vector<std::optional<Elem>> self_cover(nc);  // min involution per coset
  // Minimum realizing inverse pair per coset edge, keyed (min coset, max coset).
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<Elem, Elem>> edges;
  for (std::uint32_t c = 0; c < nc; ++c) {
    for (Elem x : part.cells[c]) {
      Elem xi = g.inv(x);
      if (xi == x) {
        if (!self_cover[c]) self_cover[c] = x;
        continue;
      }
      if (x > xi) continue;  // handle each inverse pair once
      std::uint32_t c2 = part.coset_of.at(xi);
      if (c2 == c) continue;  // pair inside one coset is unusable
      auto key = std::minmax(c, c2);
      edges.try_emplace({key.first, key.second}, x, xi);
    }
  }

  std::uint32_t pre_covered = nc;  // sentinel: none
  if (require_identity) pre_covered = part.coset_of.at(e);

  // Active cosets get graph vertices; self-coverable ones get a private dummy,
  // dummies form a clique (plus a parity vertex if needed) so that a perfect
  // matching exists exactly when every non-self-coverable coset is covered.
  std::vector<std::uint32_t> vertex_of(nc, UINT32_MAX);
  std::uint32_t nv = 0;
  for (std::uint32_t c = 0; c < nc; ++c)
    if (c != pre_covered) vertex_of[c] = nv++;
  std::vector<std::uint32_t> dummy_owner;  // coset id per dummy
  std::vector<std::uint32_t> dummy_of(nc, UINT32_MAX);
  for (std::uint32_t c = 0; c < nc; ++c)
    if (c != pre_covered && self_cover[c]) {
      dummy_of[c] = nv++;
      dummy_owner.push_back(c);
    }
  std::uint32_t parity = UINT32_MAX;
  if ((nv % 2) != 0) parity = nv++;

  using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BGraph bg(nv);
  for (const auto& [key, pair] : edges) {
    if (key.first == pre_covered || key.second == pre_covered) continue;
    boost::add_edge(vertex_of[key.first], vertex_of[key.second], bg);
  }
  std::vector<std::uint32_t> dummies;
  for (std::uint32_t c : dummy_owner) {
    boost::add_edge(vertex_of[c], dummy_of[c], bg);
    dummies.push_back(dummy_of[c]);
  }
  if (parity != UINT32_MAX) dummies.push_back(parity);
  for (std::size_t i = 0; i < dummies.size(); ++i)
    for (std::size_t j = i + 1; j < dummies.size(); ++j)
      boost::add_edge(dummies[i], dummies[j], bg);

  std::vector<boost::graph_traits<BGraph>::vertex_descriptor> mate(nv);
  bool ok = boost::checked_edmonds_maximum_cardinality_matching(bg, &mate[0]);
  if (!ok) throw std::logic_error("maximum matching verification failed");
  const auto null_v = boost::graph_traits<BGraph>::null_vertex();
  bool perfect = true;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (mate[v] == null_v) {
      perfect = false;
      break;
    }
  if (!perfect) return {SearchStatus::none, std::nullopt};

  TransversalWitness w;
  if (pre_covered != nc) w.elements.push_back(e);
  for (std::uint32_t c = 0; c < nc; ++c) {
    if (c == pre_covered) continue;
    std::uint32_t m = static_cast<std::uint32_t>(mate[vertex_of[c]]);
    if (self_cover[c] && m == dummy_of[c]) {
      w.elements.push_back(*self_cover[c]);
      continue;
    }
    // Matched to a partner coset: emit the realizing pair once, from the
    // lower-id endpoint.
    std::uint32_t c2 = nc;
    for (std::uint32_t d = 0; d < nc; ++d)
      if (d != pre_covered && vertex_of[d] == m) {
        c2 = d;
        break;
      }
    if (c2 == nc) throw std::logic_error("matching produced an unmapped mate");
    if (c > c2) continue;
    auto it = edges.find({c, c2});
    if (it == edges.end()) throw std::logic_error("matched edge without realizing pair");
    w.elements.push_back(it->second.first);
    w.elements.push_back(it->second.second);
  }
  std::sort(w.elements.begin(), w.elements.end());
  w.contains_identity =
      std::binary_search(w.elements.begin(), w.elements.end(), e);
  return {SearchStatus::found, std::move(w)};
}

// --------------------------------------------------------------- validation

bool validate_transversal(const Group& g, const Subgroup& h, const TransversalWitness& t) {
  if (t.elements.size() != g.order() / h.size()) return false;
  CosetPartition part = left_cosets(g, h, g.order());
  std::vector<bool> hit(part.cells.size(), false);
  std::unordered_set<Elem> set(t.elements.begin(), t.elements.end());
  if (set.size() != t.elements.size()) return false;
  for (Elem x : t.elements) {
    if (!set.count(g.inv(x))) return false;
    std::uint32_t c = part.coset_of.at(x);
    if (hit[c]) return false;
    hit[c] = true;
  }
  return true;
}

ConnectionSet connection_set_from_transversal(const Group& g, const TransversalWitness& t) {
  if (!t.contains_identity)
    throw std::invalid_argument(
        "connection set needs an identity-containing transversal");
  ConnectionSet s;
  const Elem e = g.identity();
  for (Elem x : t.elements)
    if (x != e) s.elements.push_back(x);
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

bool cayley_perfect_code_check(const Group& g, const ConnectionSet& s,
                               const std::vector<Elem>& code, unsigned t) {
  const Elem e = g.identity();
  std::unordered_set<Elem> sset(s.elements.begin(), s.elements.end());
  for (Elem x : s.elements) {
    if (x == e)
      throw std::invalid_argument("connection set contains the identity");
    if (!sset.count(g.inv(x)))
      throw std::invalid_argument("connection set is not inverse-closed: missing " +
                                  g.element_repr(g.inv(x)));
  }
  if (t < 1) throw std::invalid_argument("radius must be >= 1");
  if (!g.enumerable())
    throw std::invalid_argument("graph check needs an enumerable group");
  if ((t == 1 && g.order() > 100'000) || (t > 1 && g.order() > 10'000))
    throw std::runtime_error("graph check: group order exceeds size bound");

  std::unordered_set<Elem> cset(code.begin(), code.end());
  if (cset.size() != code.size())
    throw std::invalid_argument("code set has repeated elements");
  for (Elem c : code)
    if (!g.valid(c)) throw std::invalid_argument("code vertex not a group element");

  if (t == 1) {
    // Neighbors of v are {s*v : s in S}.
    for (Elem c : cset)
      for (Elem x : s.elements)
        if (cset.count(g.mul(x, c))) return false;  // not a coclique
    bool ok = true;
    g.for_each([&](Elem v) {
      if (cset.count(v)) return true;
      unsigned hits = 0;
      for (Elem x : s.elements)
        if (cset.count(g.mul(x, v)) && ++hits > 1) break;
      if (hits != 1) {
        ok = false;
        return false;
      }
      return true;
    });
    return ok;
  }

  // t > 1: count code vertices within distance t of every vertex via one BFS
  // per code vertex.
  std::unordered_map<Elem, unsigned> cnt;
  for (Elem c : cset) {
    std::unordered_map<Elem, unsigned> dist{{c, 0}};
    std::vector<Elem> frontier{c};
    for (unsigned d = 0; d < t && !frontier.empty(); ++d) {
      std::vector<Elem> next;
      for (Elem v : frontier)
        for (Elem x : s.elements) {
          Elem w = g.mul(x, v);
          if (dist.emplace(w, d + 1).second) next.push_back(w);
        }
      frontier = std::move(next);
    }
    for (const auto& [v, d] : dist) ++cnt[v];
  }
  bool ok = true;
  g.for_each([&](Elem v) {
    auto it = cnt.find(v);
    if (it == cnt.end() || it->second != 1) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

// ----------------------------------------------------------------- pipeline

TwoGroupOutcome two_group_criterion(const std::shared_ptr<const Group>& g,
                                    const std::shared_ptr<const Subgroup>& h) {
  TwoGroupOutcome out;
  if (!is_2_group(*h)) {
    out.applicable = false;
    out.verdict = Verdict::inconclusive;
    return out;
  }
  auto n = normalizer(g, *h);
  out.applicable = true;
  out.normalizer_size = n->size();
  out.phi = phi_check(*n, *h);
  out.verdict = out.phi.holds ? Verdict::perfect_code : Verdict::not_perfect_code;
  return out;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

DecisionReport is_perfect_code(const std::shared_ptr<const Group>& g,
                               const std::shared_ptr<const Subgroup>& h,
                               const DecisionPolicy& policy) {
  DecisionReport rep;
  rep.group_spec = g->describe();

  const std::uint64_t order = g->order();
  const std::uint64_t hsize = h->size();
  const std::uint64_t index = order / hsize;
  const bool enumerable = g->enumerable();
  const bool degenerate = hsize == 1 || hsize == order;

  std::optional<Verdict> verdict;
  auto record = [&](const std::string& name, Verdict v, double ms) {
    rep.methods.push_back({name, to_string(v), ms});
    if (!verdict) {
      verdict = v;
    } else if (*verdict != v && v != Verdict::inconclusive &&
               *verdict != Verdict::inconclusive) {
      throw std::logic_error("perfect-code methods disagree on the verdict");
    } else if (*verdict == Verdict::inconclusive) {
      verdict = v;
    }
  };

  bool normal = false;
  bool have_normal = false;
  try {
    normal = is_normal(g, *h);
    have_normal = true;
  } catch (const std::exception&) {
    // non-enumerable group without a closed-form normalizer
  }

  // (1) Normal subgroup: Phi(G,H) decides.
  if (have_normal && normal && enumerable) {
    auto t0 = std::chrono::steady_clock::now();
    PhiResult phi = phi_check(*g, *h);
    if (!phi.holds) rep.phi_counterexample = phi.counterexample;
    record("normal_phi", phi.holds ? Verdict::perfect_code : Verdict::not_perfect_code,
           elapsed_ms(t0));
  }

  // (2) 2-group: Phi(N_G(H),H) decides.
  if ((!verdict || policy.cross_validate) && is_2_group(*h)) {
    try {
      auto t0 = std::chrono::steady_clock::now();
      TwoGroupOutcome out = two_group_criterion(g, h);
      if (out.applicable) {
        if (!out.phi.holds && !rep.phi_counterexample)
          rep.phi_counterexample = out.phi.counterexample;
        record("two_group_criterion", out.verdict, elapsed_ms(t0));
      }
    } catch (const std::logic_error&) {
      throw;
    } catch (const std::exception&) {
      // normalizer not obtainable; fall through
    }
  }

  // (3) Transversal searches.
  const bool searchable = enumerable && order <= 1'000'000;
  if ((!verdict || policy.cross_validate) && searchable) {
    if (index <= policy.matching_limit) {
      auto t0 = std::chrono::steady_clock::now();
      auto res = transversal_search_matching(*g, *h, policy.matching_limit);
      if (res.status != SearchStatus::inconclusive)
        record("transversal_matching",
               res.status == SearchStatus::found ? Verdict::perfect_code
                                                 : Verdict::not_perfect_code,
               elapsed_ms(t0));
    }
    if ((!verdict || policy.cross_validate) && index <= policy.backtracking_limit) {
      auto t0 = std::chrono::steady_clock::now();
      auto res = transversal_search_backtracking(*g, *h, policy.backtracking_limit);
      if (res.status != SearchStatus::inconclusive)
        record("transversal_backtracking",
               res.status == SearchStatus::found ? Verdict::perfect_code
                                                 : Verdict::not_perfect_code,
               elapsed_ms(t0));
    }
  }

  if (!verdict) {
    if (degenerate) {
      // H = {e} and H = G are perfect codes a priori.
      verdict = Verdict::perfect_code;
      rep.methods.push_back({"degenerate", "perfect_code", 0.0});
    } else {
      rep.verdict = Verdict::inconclusive;
      return rep;
    }
  }
  rep.verdict = *verdict;

  // Confirm a positive verdict with an explicit witness when sizes permit.
  if (rep.verdict == Verdict::perfect_code && searchable &&
      index <= policy.matching_limit && order <= policy.graph_check_limit) {
    auto t0 = std::chrono::steady_clock::now();
    auto res = transversal_search_matching(*g, *h, policy.matching_limit, true);
    if (res.status == SearchStatus::found) {
      if (!validate_transversal(*g, *h, *res.witness))
        throw std::logic_error("search produced an invalid transversal");
      ConnectionSet s = connection_set_from_transversal(*g, *res.witness);
      std::vector<Elem> code;
      h->for_each([&](Elem x) {
        code.push_back(x);
        return true;
      });
      if (!cayley_perfect_code_check(*g, s, code, 1))
        throw std::logic_error("connection set failed the definitional graph check");
      rep.transversal = std::move(res.witness);
      rep.connection_set = std::move(s);
      rep.methods.push_back({"direct_graph", "confirmed", elapsed_ms(t0)});
    } else if (res.status == SearchStatus::none) {
      // An identity-free transversal exists but no identity-containing one:
      // this contradicts the corpus invariant and must surface loudly.
      throw std::logic_error(
          "transversal exists but no identity-containing transversal found");
    }
  }
  return rep;
}

// --------------------------------------------------------------------- json

nlohmann::ordered_json DecisionReport::to_json(bool with_timings) const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["verdict"] = to_string(verdict);
  auto ms = nlohmann::ordered_json::array();
  for (const auto& m : methods) {
    nlohmann::ordered_json e{{"name", m.name}, {"outcome", m.outcome}};
    if (with_timings) e["millis"] = m.millis;
    ms.push_back(std::move(e));
  }
  j["methods"] = std::move(ms);
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  if (transversal) {
    auto arr = nlohmann::ordered_json::array();
    for (Elem x : transversal->elements) arr.push_back(elem_hex(x));
    w["transversal"] = std::move(arr);
  }
  if (connection_set) {
    auto arr = nlohmann::ordered_json::array();
    for (Elem x : connection_set->elements) arr.push_back(elem_hex(x));
    w["connection_set"] = std::move(arr);
  }
  if (phi_counterexample) w["phi_counterexample"] = elem_hex(*phi_counterexample);
  j["witnesses"] = std::move(w);
  j["group"] = group_spec;
  auto gens = nlohmann::ordered_json::array();
  for (Elem x : subgroup_generators) gens.push_back(elem_hex(x));
  j["subgroup"] = std::move(gens);
  return j;
}

}  // namespace pcode
