#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "pcode/groups.hpp"

namespace pcode {

/// Outcome of a Phi(G,H) scan: every g in scope with g^2 in H must admit
/// h in H with (gh)^2 = e. A failed scan carries the first counterexample in
/// canonical-index order.
struct PhiResult {
  bool holds = true;
  std::optional<Elem> counterexample;
  std::uint64_t bad_square_count = 0;  // number of g with g^2 in H examined
  std::vector<std::pair<Elem, Elem>> witness_map;  // bad-square g -> its h
};

PhiResult phi_check(const Group& scope, const Subgroup& h, bool collect_witnesses = false);
PhiResult phi_check(const Subgroup& scope, const Subgroup& h, bool collect_witnesses = false);

struct TransversalWitness {
  std::vector<Elem> elements;  // sorted
  bool contains_identity = false;
};

enum class SearchStatus { found, none, inconclusive };

struct TransversalSearchResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<TransversalWitness> witness;
};

/// Complete backtracking over coset representatives; choosing x forces x^{-1}.
TransversalSearchResult transversal_search_backtracking(const Group& g, const Subgroup& h,
                                                        std::uint64_t limit = 5000,
                                                        bool require_identity = false);

/// Coset inverse-graph reformulation solved by general maximum matching.
TransversalSearchResult transversal_search_matching(const Group& g, const Subgroup& h,
                                                    std::uint64_t limit = 1'000'000,
                                                    bool require_identity = false);

/// One element per left coset, closed under inversion.
bool validate_transversal(const Group& g, const Subgroup& h, const TransversalWitness& t);

struct ConnectionSet {
  std::vector<Elem> elements;  // sorted; no identity; inverse-closed
};

/// S = T \ {e}; requires an identity-containing transversal.
ConnectionSet connection_set_from_transversal(const Group& g, const TransversalWitness& t);

/// Definitional perfect t-code check on Cay(G,S): exactly one code vertex
/// within distance t of every vertex. Throws if S contains the identity or is
/// not inverse-closed.
bool cayley_perfect_code_check(const Group& g, const ConnectionSet& s,
                               const std::vector<Elem>& code, unsigned t = 1);

enum class Verdict { perfect_code, not_perfect_code, inconclusive };

/// H is a perfect code iff Phi(N_G(H),H) holds, for 2-groups H.
struct TwoGroupOutcome {
  bool applicable = false;
  Verdict verdict = Verdict::inconclusive;
  PhiResult phi;
  std::uint64_t normalizer_size = 0;
};

TwoGroupOutcome two_group_criterion(const std::shared_ptr<const Group>& g,
                                    const std::shared_ptr<const Subgroup>& h);

struct MethodOutcome {
  std::string name;     // normal_phi | two_group_criterion | transversal_backtracking |
                        // transversal_matching | direct_graph
  std::string outcome;  // perfect_code | not_perfect_code | inconclusive | confirmed
  double millis = 0.0;
};

struct DecisionReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<MethodOutcome> methods;
  std::optional<TransversalWitness> transversal;
  std::optional<ConnectionSet> connection_set;
  std::optional<Elem> phi_counterexample;
  std::string group_spec;
  std::vector<Elem> subgroup_generators;

  nlohmann::ordered_json to_json(bool with_timings = false) const;
};

struct DecisionPolicy {
  bool cross_validate = false;
  std::uint64_t backtracking_limit = 5000;
  std::uint64_t matching_limit = 1'000'000;
  std::uint64_t graph_check_limit = 100'000;  // |G| bound for the direct check
};

/// Decision pipeline: normal subgroups via Phi(G,H); 2-groups via
/// Phi(N_G(H),H); everything else via transversal search. Positive verdicts
/// are confirmed by an explicit connection set and the definitional graph
/// check whenever sizes permit.
DecisionReport is_perfect_code(const std::shared_ptr<const Group>& g,
                               const std::shared_ptr<const Subgroup>& h,
                               const DecisionPolicy& policy = {});

const char* to_string(Verdict v);

}  // namespace pcode
