// Command-line front end: decide subgroup perfect codes, replay the
// AGL(2,q^2) construction, enumerate small-group corpora, and run the
// definitional Cayley-graph check.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "pcode/codes.hpp"
#include "pcode/fields.hpp"
#include "pcode/groups.hpp"
#include "pcode/repro.hpp"

namespace {

using namespace pcode;

struct GroupContext {
  std::shared_ptr<Group> group;
  std::shared_ptr<AffineGroup> affine;  // set for agl:<n> groups
};

GroupContext parse_group(const std::string& spec) {
  GroupContext ctx;
  if (spec.rfind("agl:", 0) == 0) {
    unsigned n = static_cast<unsigned>(std::stoul(spec.substr(4)));
    auto tower = std::make_shared<FieldTower>(n);
    ctx.affine = make_agl2(tower);
    ctx.group = ctx.affine;
  } else {
    ctx.group = make_named(spec);
  }
  return ctx;
}

Elem parse_element(const GroupContext& ctx, const std::string& text) {
  if (ctx.affine) return ctx.affine->parse_literal(text);
  if (auto* pg = dynamic_cast<const PermutationGroup*>(ctx.group.get()))
    if (!text.empty() && (text[0] == '(' || text == "e"))
      return pg->parse_cycles(text);
  std::size_t pos = 0;
  Elem v = std::stoull(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("bad element id: " + text);
  if (!ctx.group->valid(v)) throw std::invalid_argument("element id not in group: " + text);
  return v;
}

std::vector<Elem> parse_element_list(const GroupContext& ctx, const std::string& text) {
  std::vector<Elem> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string part = text.substr(start, comma - start);
    if (!part.empty()) out.push_back(parse_element(ctx, part));
    start = comma + 1;
  }
  return out;
}

void print_report(const nlohmann::ordered_json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // Stable line-oriented key: value rendering.
  std::function<void(const nlohmann::ordered_json&, const std::string&)> walk =
      [&](const nlohmann::ordered_json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
          std::cout << prefix << ":";
          for (const auto& v : node)
            std::cout << " " << (v.is_string() ? v.get<std::string>() : v.dump());
          std::cout << "\n";
        } else {
          std::cout << prefix << ": "
                    << (node.is_string() ? node.get<std::string>() : node.dump())
                    << "\n";
        }
      };
  walk(j, "");
}

int cmd_reproduce(unsigned n, const std::string& format, std::uint64_t seed,
                  bool full_scan, bool timings) {
  ReproOptions opts;
  opts.seed = seed;
  opts.full_g_scan = full_scan;
  ReproReport rep = reproduce(n, opts);
  if (format == "json") {
    std::cout << rep.to_json(timings).dump(2) << "\n";
  } else {
    std::cout << "n: " << rep.n << "\nq: " << rep.q << "\nmodulus: " << rep.modulus_hex
              << "\n";
    for (const auto& c : rep.checks)
      std::cout << c.name << ": " << (c.pass ? "PASS" : "FAIL") << "\n";
    std::cout << "overall: " << (rep.overall ? "PASS" : "FAIL") << "\n";
  }
  return rep.overall ? 0 : 1;
}

int cmd_check(const std::string& group_spec, const std::vector<std::string>& gen_texts,
              const std::string& method, bool cross_validate, std::uint64_t limit,
              const std::string& format, bool timings) {
  GroupContext ctx = parse_group(group_spec);
  std::shared_ptr<const Subgroup> h;
  std::vector<Elem> gens;
  for (const auto& t : gen_texts) gens.push_back(parse_element(ctx, t));
  if (ctx.affine && gens.empty()) {
    h = make_hq(ctx.affine);
  } else {
    h = subgroup_closure(ctx.group, gens);
  }

  DecisionReport rep;
  if (method == "auto") {
    DecisionPolicy policy;
    policy.cross_validate = cross_validate;
    policy.matching_limit = limit;
    rep = is_perfect_code(ctx.group, h, policy);
  } else {
    rep.group_spec = ctx.group->describe();
    auto push = [&](const std::string& name, Verdict v) {
      rep.methods.push_back({name, to_string(v), 0.0});
      rep.verdict = v;
    };
    if (method == "normal_phi") {
      if (!is_normal(ctx.group, *h))
        throw std::invalid_argument("normal_phi requires a normal subgroup");
      PhiResult phi = phi_check(*ctx.group, *h);
      if (!phi.holds) rep.phi_counterexample = phi.counterexample;
      push("normal_phi",
           phi.holds ? Verdict::perfect_code : Verdict::not_perfect_code);
    } else if (method == "two_group") {
      TwoGroupOutcome out = two_group_criterion(ctx.group, h);
      if (!out.applicable)
        throw std::invalid_argument("two_group criterion needs a 2-group subgroup");
      if (!out.phi.holds) rep.phi_counterexample = out.phi.counterexample;
      push("two_group_criterion", out.verdict);
    } else if (method == "backtracking" || method == "matching") {
      auto res = method == "matching"
                     ? transversal_search_matching(*ctx.group, *h, limit)
                     : transversal_search_backtracking(*ctx.group, *h, limit);
      Verdict v = res.status == SearchStatus::found ? Verdict::perfect_code
                  : res.status == SearchStatus::none ? Verdict::not_perfect_code
                                                     : Verdict::inconclusive;
      if (res.witness) rep.transversal = res.witness;
      push("transversal_" + method, v);
    } else {
      throw std::invalid_argument("unknown method: " + method);
    }
  }
  rep.subgroup_generators = gens;
  print_report(rep.to_json(timings), format);
  switch (rep.verdict) {
    case Verdict::perfect_code: return 0;
    case Verdict::not_perfect_code: return 1;
    default: return 3;
  }
}

int cmd_enumerate(const std::string& group_spec, const std::string& format,
                  bool timings) {
  GroupContext ctx = parse_group(group_spec);
  auto subs = enumerate_subgroups(ctx.group);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& sg : subs) {
    DecisionReport rep = is_perfect_code(ctx.group, sg);
    nlohmann::ordered_json e;
    e["order"] = sg->size();
    auto elems = nlohmann::ordered_json::array();
    for (Elem x : sg->elements()) elems.push_back(elem_hex(x));
    e["elements"] = std::move(elems);
    e["verdict"] = to_string(rep.verdict);
    arr.push_back(std::move(e));
  }
  nlohmann::ordered_json j;
  j["group"] = ctx.group->describe();
  j["subgroups"] = std::move(arr);
  (void)timings;
  print_report(j, format);
  return 0;
}

int cmd_graph_check(const std::string& group_spec, const std::string& s_text,
                    const std::string& c_text, unsigned t, const std::string& format) {
  GroupContext ctx = parse_group(group_spec);
  ConnectionSet s;
  s.elements = parse_element_list(ctx, s_text);
  std::vector<Elem> code = parse_element_list(ctx, c_text);
  bool ok = cayley_perfect_code_check(*ctx.group, s, code, t);
  nlohmann::ordered_json j;
  j["group"] = ctx.group->describe();
  j["t"] = t;
  j["perfect_code"] = ok;
  print_report(j, format);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subgroup perfect-code decision toolkit"};
  app.require_subcommand(1);

  std::string format = "text";
  std::uint64_t seed = 0;
  bool timings = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", seed, "Seed for randomized validation");
    cmd->add_flag("--timings", timings,
                  "Include per-method timings (breaks byte-identical output)");
  };

  unsigned n = 1;
  bool full_scan = false;
  auto* rep = app.add_subcommand("reproduce", "Replay the AGL(2,q^2) construction");
  rep->add_option("--n", n, "Tower parameter (q = 2^n)")->required();
  rep->add_flag("--full-scan", full_scan, "Full Phi(G) scan at n=2");
  add_common(rep);

  std::string group_spec, method = "auto", s_text, c_text;
  std::vector<std::string> gens;
  bool cross_validate = false;
  std::uint64_t limit = 1'000'000;
  auto* chk = app.add_subcommand("check", "Decide whether a subgroup is a perfect code");
  chk->add_option("--group", group_spec, "Group spec, e.g. cyclic:6, sym:4, agl:1")
      ->required();
  chk->add_option("--subgroup", gens,
                  "Subgroup generators (ids, cycles, or affine literals); "
                  "omitted on agl groups means H_q");
  chk->add_option("--method", method, "auto|normal_phi|two_group|backtracking|matching")
      ->check(CLI::IsMember({"auto", "normal_phi", "two_group", "backtracking",
                             "matching"}));
  chk->add_flag("--cross-validate", cross_validate, "Run all applicable methods");
  chk->add_option("--limit", limit, "Coset limit for transversal searches");
  add_common(chk);

  auto* enu = app.add_subcommand("enumerate", "All subgroups of a small group");
  enu->add_option("--group", group_spec, "Group spec (order <= 24)")->required();
  add_common(enu);

  unsigned t = 1;
  auto* gch = app.add_subcommand("graph-check", "Definitional perfect t-code check");
  gch->add_option("--group", group_spec, "Group spec")->required();
  gch->add_option("--s", s_text, "Connection set, comma-separated element ids")
      ->required();
  gch->add_option("--c", c_text, "Code set, comma-separated element ids")->required();
  gch->add_option("--t", t, "Radius (default 1)");
  add_common(gch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (rep->parsed()) {
      if (n < 1 || n > 3) {
        std::cerr << "error: --n must be 1, 2 or 3\n";
        return 2;
      }
      return cmd_reproduce(n, format, seed, full_scan, timings);
    }
    if (chk->parsed())
      return cmd_check(group_spec, gens, method, cross_validate, limit, format, timings);
    if (enu->parsed()) return cmd_enumerate(group_spec, format, timings);
    if (gch->parsed()) return cmd_graph_check(group_spec, s_text, c_text, t, format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
