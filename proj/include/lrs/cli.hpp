#pragma once

// Command-line surface.  Verbs: verify, product, quotient, iso, divides,
// free, demo.  Exit codes: 0 = all requested properties hold, 1 = a
// checked property fails, 2 = input, schema, cap, or usage error.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrs/free_construction.hpp"
#include "lrs/io.hpp"
#include "lrs/iso.hpp"
#include "lrs/lr_product.hpp"
#include "lrs/lr_system.hpp"
#include "lrs/pre_system.hpp"
#include "lrs/render.hpp"
#include "lrs/semigroup.hpp"

namespace lrs {
namespace cli_detail {

inline void print_violations(const std::vector<AxiomViolation>& violations,
                             const FiniteSemigroup& sk, std::ostream& out) {
  for (const auto& v : violations)
    out << "  (" << to_string(v.cond) << ") a=" << sk.label(v.a)
        << " b=" << sk.label(v.b) << " c=" << sk.label(v.c)
        << " i=" << v.index << "\n";
}

inline int cmd_verify(const std::string& file, bool unital, bool natural,
                      std::ostream& out) {
  LrSystem sys = load_system(file);
  check_arities(sys);
  auto violations = check_axioms(sys);
  bool ok = violations.empty();
  if (ok) {
    out << "axioms: ok\n";
  } else {
    out << "axioms: " << violations.size() << " violation(s)\n";
    print_violations(violations, sys.skeleton, out);
  }
  if (unital) {
    UnitalReport rep = is_unital(sys);
    out << "unital: " << (rep.unital ? "yes" : "no") << "\n";
    for (const auto& f : rep.failures) out << "  " << f << "\n";
    ok = ok && rep.unital;
  }
  if (natural) {
    try {
      PreLrSystem pre = extract_pre(make_system(sys));
      DeltaReport rep =
          check_natural_solutions(pre, DeltaMode::all_solutions);
      out << "natural solutions (all): "
          << (rep.ok ? "ok" : "violated") << " ("
          << rep.assignments_checked << " assignments)\n";
      for (const auto& v : rep.violations)
        out << "  delta" << v.delta << " at a=" << sys.skeleton.label(v.a)
            << " b=" << sys.skeleton.label(v.b)
            << " c=" << sys.skeleton.label(v.c) << " i=" << v.index << "\n";
      ok = ok && rep.ok;
    } catch (const NotUnital&) {
      out << "natural solutions: system is not unital\n";
      ok = false;
    } catch (const AxiomError&) {
      out << "natural solutions: skipped, axioms already fail\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

inline int cmd_product(const std::string& system_file,
                       const std::string& base_file,
                       const std::string& out_file, long long cap,
                       std::ostream& out) {
  LrSystem raw = load_system(system_file);
  LrSystem sys;
  try {
    sys = make_system(raw);
  } catch (const AxiomError& e) {
    out << "system invalid: " << e.violations.size() << " violation(s)\n";
    print_violations(e.violations, raw.skeleton, out);
    return 1;
  }
  FiniteSemigroup base = load_semigroup(base_file);
  ProductSemigroup p = build_product(base, sys, cap);
  out << "order " << p.semigroup.order << "\n"
      << render_table(p.semigroup);
  if (!out_file.empty()) write_json_file(out_file, product_to_json(p));
  return 0;
}

inline int cmd_quotient(const std::string& semigroup_file,
                        const std::string& partition_file,
                        const std::string& out_file, std::ostream& out) {
  FiniteSemigroup s = load_semigroup(semigroup_file);
  auto classes = load_partition(partition_file);
  Congruence c;
  try {
    c = congruence_from_partition(s, classes);
  } catch (const NotCompatible& e) {
    out << "not a congruence: (" << s.label(e.a) << "~" << s.label(e.a2)
        << ")*(" << s.label(e.b) << "~" << s.label(e.b2)
        << ") lands in different classes\n";
    return 1;
  }
  auto [q, hom] = quotient(s, c);
  out << "order " << q.order << "\n" << render_table(q);
  for (int i = 0; i < s.order; ++i)
    out << s.label(i) << " -> " << q.label(hom.map[i]) << "\n";
  if (!out_file.empty()) {
    Json j = semigroup_to_json(q);
    j["map"] = hom.map;
    write_json_file(out_file, j);
  }
  return 0;
}

inline int cmd_iso(const std::string& a_file, const std::string& b_file,
                   int cap, std::ostream& out) {
  FiniteSemigroup a = load_semigroup(a_file);
  FiniteSemigroup b = load_semigroup(b_file);
  auto m = find_isomorphism(a, b, cap);
  if (!m) {
    out << "not isomorphic\n";
    return 1;
  }
  out << "isomorphic\n";
  for (int i = 0; i < a.order; ++i)
    out << a.label(i) << " -> " << b.label((*m)[i]) << "\n";
  return 0;
}

inline int cmd_divides(const std::string& t_file, const std::string& s_file,
                       long long sub_cap, std::ostream& out) {
  FiniteSemigroup t = load_semigroup(t_file);
  FiniteSemigroup s = load_semigroup(s_file);
  DivisionCaps caps;
  caps.max_subsemigroups = sub_cap;
  auto w = divides(t, s, caps);
  if (!w) {
    out << "no division witness\n";
    return 1;
  }
  out << "divides: subset {";
  for (size_t i = 0; i < w->subset.size(); ++i)
    out << (i ? "," : "") << s.label(w->subset[i]);
  out << "} maps onto " << t_file << "\n";
  for (int i = 0; i < w->onto.source.order; ++i)
    out << "  " << w->onto.source.label(i) << " -> "
        << t.label(w->onto.map[i]) << "\n";
  return 0;
}

inline int cmd_free(const std::string& system_file, int length,
                    const std::string& divide_base, bool even_freer,
                    long long product_cap, const std::string& out_file,
                    std::ostream& out) {
  LrSystem raw = load_system(system_file);
  LrSystem sys;
  try {
    sys = make_system(raw);
  } catch (const AxiomError& e) {
    out << "system invalid: " << e.violations.size() << " violation(s)\n";
    print_violations(e.violations, raw.skeleton, out);
    return 1;
  }
  FreeBundle b = free_of_system(sys, length, even_freer);
  int nw = static_cast<int>(b.fs.base.words.size());
  out << "words (length <= " << length << "): " << nw << "\n";
  for (int w = 0; w < nw; ++w)
    out << "  |I[" << b.word_skeleton.label(w) << "]| = " << b.fs.size_of(w)
        << "\n";
  out << "chains: " << (b.fs.chains_ok ? "ok" : "FAIL") << "\n"
      << "splits: " << (b.fs.split_ok ? "ok" : "FAIL") << "\n"
      << "projection solutions: "
      << (b.fs.projections_valid ? "ok" : "FAIL") << "\n"
      << "delta (projection family): " << (b.delta.ok ? "ok" : "FAIL")
      << " (" << b.delta.assignments_checked << " triples)\n";
  FreeTransformation ft = free_transformation(b);
  out << "letters map by identity: " << (ft.letters_identity ? "ok" : "FAIL")
      << "\n"
      << "middle coordinate formulas agree: "
      << (ft.middle_formulas_agree ? "ok" : "FAIL") << "\n"
      << "images chain-compatible: "
      << (ft.images_chain_compatible ? "ok" : "FAIL") << "\n"
      << "squares: " << (ft.squares_ok ? "ok" : "FAIL") << " ("
      << ft.squares_checked << " pairs)\n";
  bool ok = b.fs.chains_ok && b.fs.split_ok && b.fs.projections_valid &&
            b.delta.ok && ft.letters_identity && ft.middle_formulas_agree &&
            ft.images_chain_compatible && ft.squares_ok;

  Json report{{"word_sizes", b.word_pre.index_sizes},
              {"chains_ok", b.fs.chains_ok},
              {"split_ok", b.fs.split_ok},
              {"projections_valid", b.fs.projections_valid},
              {"delta_ok", b.delta.ok},
              {"squares_ok", ft.squares_ok}};

  if (!divide_base.empty()) {
    FiniteSemigroup base = load_semigroup(divide_base);
    DivideReport rep = verify_divide(sys, base, length, even_freer,
                                     product_cap);
    out << "word product order: " << rep.word_product_order << "\n"
        << "target product order: " << rep.codomain_order << "\n"
        << "homomorphism equation: " << (rep.hom_ok ? "ok" : "FAIL") << " ("
        << rep.pairs_checked << " pairs)\n";
    if (rep.surjectivity_checked)
      out << "surjective onto target: " << (rep.surjective ? "yes" : "NO")
          << "\n";
    else
      out << "surjectivity: not checked (even-freer mode)\n";
    out << "base-system product embeds: " << (rep.embed_ok ? "ok" : "FAIL")
        << "\n";
    if (rep.surjectivity_checked)
      out << "division chain: " << (rep.sh_chain_ok ? "ok" : "FAIL") << "\n";
    else
      out << "division chain: not certified (surjectivity unchecked)\n";
    ok = ok && rep.hom_ok && rep.embed_ok &&
         (!rep.surjectivity_checked || (rep.surjective && rep.sh_chain_ok));
    report["divide"] = Json{{"word_product_order", rep.word_product_order},
                            {"codomain_order", rep.codomain_order},
                            {"hom_ok", rep.hom_ok},
                            {"pairs_checked", rep.pairs_checked},
                            {"surjective", rep.surjective},
                            {"embed_ok", rep.embed_ok},
                            {"sh_chain_ok", rep.sh_chain_ok}};
  }
  if (!out_file.empty()) write_json_file(out_file, report);
  return ok ? 0 : 1;
}

inline bool demo_table(const FiniteSemigroup& s,
                       const std::vector<std::string>& order,
                       const std::vector<std::vector<std::string>>& expected,
                       std::ostream& out) {
  out << render_table(s, order);
  bool match = table_by_labels(s, order) == expected;
  out << "table matches expected: " << (match ? "yes" : "NO") << "\n";
  return match;
}

inline int cmd_demo(const std::string& name, std::ostream& out) {
  bool ok = true;
  if (name == "lzero") {
    ProductSemigroup p = build_product(cyclic(2), lzero_example());
    ok &= demo_table(p.semigroup, {"00", "11", "01", "10"},
                     {{"00", "11", "00", "11"},
                      {"11", "00", "11", "00"},
                      {"01", "10", "01", "10"},
                      {"10", "01", "10", "01"}},
                     out);
    auto c = congruence_from_partition(p.semigroup, {{0, 3}, {1, 2}});
    auto [q, hom] = quotient(p.semigroup, c);
    out << "\nquotient by {00,11},{01,10}:\n" << render_table(q);
    bool iso = find_isomorphism(q, left_zero(2)).has_value();
    out << "isomorphic to left-zero(2): " << (iso ? "yes" : "NO") << "\n";
    ok &= iso;
  } else if (name == "flipflop") {
    ProductSemigroup p = build_product(cyclic(2), flipflop_example());
    ok &= demo_table(p.semigroup, {"0", "1", "00", "11", "01", "10"},
                     {{"0", "1", "00", "11", "01", "10"},
                      {"1", "0", "11", "00", "10", "01"},
                      {"00", "11", "00", "11", "00", "11"},
                      {"11", "00", "11", "00", "11", "00"},
                      {"01", "10", "01", "10", "01", "10"},
                      {"10", "01", "10", "01", "10", "01"}},
                     out);
    auto c = congruence_from_partition(p.semigroup, {{0, 1}, {2, 5}, {3, 4}});
    auto [q, hom] = quotient(p.semigroup, c);
    out << "\nquotient by {0,1},{00,11},{01,10}:\n" << render_table(q);
    bool iso = find_isomorphism(q, flip_flop_left()).has_value();
    out << "isomorphic to the left flip-flop monoid: "
        << (iso ? "yes" : "NO") << "\n";
    ok &= iso;
  } else if (name == "wreath") {
    FiniteSemigroup z2 = cyclic(2);
    FiniteSemigroup w = wreath_product(z2, z2);
    ProductSemigroup p = build_product(z2, left_action_system(z2, z2.table));
    out << render_table(w);
    bool same = w == p.semigroup;
    out << "wreath formula equals the product construction: "
        << (same ? "yes" : "NO") << "\n";
    bool group = is_group(w);
    bool nonabelian = !is_commutative(w);
    out << "group of order " << w.order << ": " << (group ? "yes" : "NO")
        << ", non-abelian: " << (nonabelian ? "yes" : "NO") << "\n";
    ok &= same && group && nonabelian && w.order == 8;
  } else {  // free
    LrSystem sys = flipflop_example();
    FreeBundle b = free_of_system(sys, 2);
    out << "word system over {";
    for (int x = 0; x < sys.skeleton.order; ++x)
      out << (x ? "," : "") << sys.skeleton.label(x);
    out << "}*, length <= 2\n";
    for (size_t w = 0; w < b.fs.base.words.size(); ++w)
      out << "  |I[" << b.word_skeleton.label(static_cast<int>(w))
          << "]| = " << b.fs.size_of(static_cast<int>(w)) << "\n";
    DivideReport rep = verify_divide(sys, cyclic(2), 2);
    out << "word product order: " << rep.word_product_order
        << ", target order: " << rep.codomain_order << "\n"
        << "homomorphism equation: " << (rep.hom_ok ? "ok" : "FAIL") << "\n"
        << "surjective onto target: " << (rep.surjective ? "yes" : "NO")
        << "\n"
        << "division chain: " << (rep.sh_chain_ok ? "ok" : "FAIL") << "\n";
    ok &= b.delta.ok && rep.hom_ok && rep.surjective && rep.sh_chain_ok &&
          rep.word_product_order == 35 && rep.codomain_order == 8;
  }
  out << (ok ? "demo checks passed\n" : "demo checks FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"finite lambda-rho systems and their products"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "check a system file");
  std::string verify_file;
  bool flag_unital = false, flag_natural = false;
  verify->add_option("file", verify_file, "system JSON file")->required();
  verify->add_flag("--unital", flag_unital, "also check unitality");
  verify->add_flag("--natural-solutions", flag_natural,
                   "also run the all-solutions delta check");

  auto* product = app.add_subcommand("product", "build a product table");
  std::string prod_system, prod_base, prod_out;
  long long product_cap = 4096;
  product->add_option("system", prod_system, "system JSON file")->required();
  product->add_option("base", prod_base, "semigroup JSON file")->required();
  product->add_option("-o,--out", prod_out, "write the product as JSON");
  product->add_option("--product-cap", product_cap, "max product order");

  auto* quot = app.add_subcommand("quotient", "quotient by a partition");
  std::string quot_sg, quot_part, quot_out;
  quot->add_option("semigroup", quot_sg, "semigroup JSON file")->required();
  quot->add_option("partition", quot_part, "partition JSON file")->required();
  quot->add_option("-o,--out", quot_out, "write the quotient as JSON");

  auto* iso = app.add_subcommand("iso", "search for an isomorphism");
  std::string iso_a, iso_b;
  int iso_cap = 16;
  iso->add_option("a", iso_a, "semigroup JSON file")->required();
  iso->add_option("b", iso_b, "semigroup JSON file")->required();
  iso->add_option("--iso-cap", iso_cap, "max order for the search");

  auto* div = app.add_subcommand("divides", "search for a division witness");
  std::string div_t, div_s;
  long long sub_cap = 200000;
  div->add_option("t", div_t, "candidate divisor JSON file")->required();
  div->add_option("s", div_s, "ambient semigroup JSON file")->required();
  div->add_option("--sub-cap", sub_cap, "max subsemigroups enumerated");

  auto* free_cmd = app.add_subcommand("free", "build the word system");
  std::string free_system, free_divide, free_out;
  int free_len = 3;
  bool even_freer = false;
  long long free_cap = 4096;
  free_cmd->add_option("system", free_system, "system JSON file")->required();
  free_cmd->add_option("--length", free_len, "word length bound");
  free_cmd->add_option("--check-divide", free_divide,
                       "base semigroup JSON; verify the division theorem");
  free_cmd->add_flag("--even-freer", even_freer,
                     "full product index sets (no chain constraints)");
  free_cmd->add_option("--product-cap", free_cap, "max product order");
  free_cmd->add_option("-o,--out", free_out, "write the report as JSON");

  auto* demo = app.add_subcommand("demo", "run a built-in example");
  std::string demo_name;
  demo->add_option("name", demo_name, "lzero, flipflop, wreath, or free")
      ->required()
      ->check(CLI::IsMember({"lzero", "flipflop", "wreath", "free"}));

  std::vector<const char*> argv;
  argv.push_back("lrs");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (verify->parsed())
      return cli_detail::cmd_verify(verify_file, flag_unital, flag_natural,
                                    out);
    if (product->parsed())
      return cli_detail::cmd_product(prod_system, prod_base, prod_out,
                                     product_cap, out);
    if (quot->parsed())
      return cli_detail::cmd_quotient(quot_sg, quot_part, quot_out, out);
    if (iso->parsed()) return cli_detail::cmd_iso(iso_a, iso_b, iso_cap, out);
    if (div->parsed())
      return cli_detail::cmd_divides(div_t, div_s, sub_cap, out);
    if (free_cmd->parsed())
      return cli_detail::cmd_free(free_system, free_len, free_divide,
                                  even_freer, free_cap, free_out, out);
    if (demo->parsed()) return cli_detail::cmd_demo(demo_name, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace lrs
