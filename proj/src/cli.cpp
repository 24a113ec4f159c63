#include "linkforge/cli.hpp"

#include "linkforge/bingtree.hpp"
#include "linkforge/foxcalc.hpp"
#include "linkforge/milnor.hpp"
#include "linkforge/repsearch.hpp"
#include "linkforge/signatures.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace linkforge::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return s.str();
}

// Resolves a path, falling back to the fixture directory
// ($LINKFORGE_FIXTURES, else the source tree's fixtures/).
fs::path resolve(const std::string& name) {
  fs::path p(name);
  if (fs::exists(p)) return p;
  if (p.is_relative()) {
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("LINKFORGE_FIXTURES")) dirs.emplace_back(env);
    dirs.emplace_back(LINKFORGE_DEFAULT_FIXTURES);
    for (const auto& d : dirs) {
      if (fs::exists(d / p)) return d / p;
      if (fs::exists(d / p.filename())) return d / p.filename();
    }
  }
  throw InputError("file not found: " + name);
}

struct Context {
  json inputs = json::array();

  std::string read(const std::string& name) {
    fs::path p = resolve(name);
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    inputs.push_back({{"path", p.string()}, {"sha256", sha256_hex(text)}});
    return text;
  }
  Diagram diagram(const std::string& name) { return parse_pd(read(name)); }
  Presentation presentation(const std::string& name) { return load_presentation(read(name)); }
};

json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

json poly_json(const LaurentPoly& p, const std::vector<std::string>& names = {}) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponents", e}, {"coeff", big(c)}});
  return {{"variables", p.variable_count()}, {"terms", terms}, {"text", p.to_string(names)}};
}

json matrix_json(const FpMatrix2& m) { return {{m.a(), m.b()}, {m.c(), m.d()}}; }

json assignment_json(const Sl2Assignment& a) {
  json out = json::array();
  for (const auto& m : a) out.push_back(matrix_json(m));
  return out;
}

std::vector<int> parse_index(const std::string& s) {
  std::vector<int> idx;
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        idx.push_back(std::stoi(tok));
      } catch (const std::logic_error&) {
        throw InputError("bad index entry '" + tok + "'");
      }
    }
  } else {
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw InputError("bad index '" + s + "'");
      idx.push_back(ch - '0');
    }
  }
  if (idx.empty()) throw InputError("empty index");
  return idx;
}

// "4", "2.5" or "7/3", read exactly.
Rational parse_rational(const std::string& s) {
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      Rational r{boost::multiprecision::cpp_int(digits)};
      for (std::size_t i = dot + 1; i < s.size(); ++i) r /= 10;
      return r;
    }
    return Rational(s);
  } catch (const std::exception&) {
    throw InputError("bad number '" + s + "'");
  }
}

json diagram_summary(const Diagram& d) {
  return {{"components", d.component_count()},
          {"crossings", d.crossing_count()},
          {"linking_matrix", linking_matrix(d)},
          {"pd", render_pd(d)}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

json presentation_json(const Presentation& p) {
  json rel = json::array(), mer = json::array(), lon = json::array();
  for (const auto& r : p.relators) rel.push_back(format_word(r));
  for (int g : p.meridians) mer.push_back("x" + std::to_string(g));
  for (const auto& l : p.longitudes) lon.push_back(l ? json(format_word(*l)) : json(nullptr));
  return {{"generators", p.generator_count},
          {"relators", rel},
          {"meridians", mer},
          {"longitudes", lon},
          {"fpg", render_presentation(p)}};
}

AnnularPattern named_pattern(const std::string& name, const std::string& eta) {
  if (name == "bing") return bing_pattern();
  if (name == "identity") return identity_pattern(1);
  if (name == "borromean-axis") return borromean_axis_pattern(parse_word(eta));
  throw InputError("unknown pattern '" + name + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Link invariants and constructions", "linkforge"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  app.add_option("--report", report_path, "Also write a run report (inputs, hashes, timing) to this file");

  std::string file, file2, index = "", pattern = "bing", eta = "x1 x2 X1 X2 x1 x2 X1 X2 x1 x2 x1 X2 X1 X1";
  std::string components, out_path, witness_word, seed_order = "greedy", seifert, r_text;
  int deleted = 1, max_length = 0, q = 0, m = 0, p = 5, workers = 1, count = 1, component = 1;
  std::size_t max_solutions = 1;
  bool eliminate = false, all = false;
  double c_x = 0;
  std::vector<double> c_i;

  auto* parse = app.add_subcommand("parse", "Validate a PD file and print its summary");
  parse->add_option("file", file, "PD file")->required();
  auto* lk = app.add_subcommand("lk", "Linking matrix");
  lk->add_option("file", file, "PD file")->required();
  auto* wirt = app.add_subcommand("wirtinger", "Wirtinger presentation");
  wirt->add_option("file", file, "PD file")->required();
  wirt->add_flag("--eliminate", eliminate, "Substitute away conjugation relators");
  auto* surg = app.add_subcommand("surgery", "Zero-surgery presentation");
  surg->add_option("file", file, "PD file")->required();
  surg->add_option("--components", components, "Comma-separated components (from 1); default all");
  auto* alex = app.add_subcommand("alex", "Multivariable Alexander polynomial");
  alex->add_option("file", file, "PD or .fpg file")->required();
  alex->add_option("--delete", deleted, "Component whose meridian column is deleted (from 1)");
  auto* conway = app.add_subcommand("conway", "Conway polynomial");
  conway->add_option("file", file, "PD file")->required();
  auto* arf = app.add_subcommand("arf", "Arf invariant of a knot");
  arf->add_option("file", file, "PD file")->required();
  auto* torres = app.add_subcommand("torres", "Torres condition at the first component");
  torres->add_option("file", file, "PD file")->required();
  auto* milnor = app.add_subcommand("milnor", "Milnor invariants");
  milnor->add_option("file", file, "PD file")->required();
  milnor->add_option("--index", index, "Multi-index, e.g. 123 or 1,10,3");
  milnor->add_option("--max-length", max_length, "Table of all non-repeating indices up to this length");
  milnor->add_option("--q", q, "Truncation degree (default: index length)");
  auto* tree = app.add_subcommand("tree", "Tree T(m) data");
  tree->add_option("--m", m, "Number of leaves")->required();
  auto* bing = app.add_subcommand("bing", "Tree link for a multi-index");
  bing->add_option("--index", index, "Leaf labels left to right, e.g. 1234")->required();
  bing->add_option("--out", out_path, "Write the PD file here");
  auto* sat = app.add_subcommand("satellite", "Satellite of a link component");
  sat->add_option("file", file, "Companion PD file")->required();
  sat->add_option("--component", component, "Companion component (from 1)");
  sat->add_option("--pattern", pattern, "bing, identity or borromean-axis");
  sat->add_option("--eta", eta, "Axis word for borromean-axis (letters x1, x2)");
  sat->add_option("--out", out_path, "Write the PD file here");
  auto* rep = app.add_subcommand("repsearch", "Search SL(2,F_p) representations");
  rep->add_option("file", file, ".fpg file")->required();
  rep->add_option("--p", p, "Prime");
  rep->add_option("--max", max_solutions, "Stop after this many solutions");
  rep->add_flag("--all", all, "Enumerate every solution");
  rep->add_option("--workers", workers, "Worker threads");
  rep->add_option("--seed-order", seed_order, "greedy or index");
  rep->add_option("--witness", witness_word, "Named word that must map to a non-identity matrix");
  auto* ver = app.add_subcommand("verify", "Check a stored representation");
  ver->add_option("file", file, ".fpg file")->required();
  ver->add_option("rep", file2, "Representation JSON (default: images in the .fpg file)");
  auto* rho = app.add_subcommand("rho", "Signature integral of a knot");
  rho->add_option("--seifert", seifert, "Seifert matrix CSV")->required();
  auto* nj = app.add_subcommand("nj", "Choose N_j");
  auto* r_opt = nj->add_option("--R", r_text, "Budget R (integer, decimal or a/b)");
  auto* cx_opt = nj->add_option("--cx", c_x, "C_X; with --ci gives R = C_X + 2 sum C_i");
  nj->add_option("--ci", c_i, "C_i values");
  nj->add_option("--count", count, "How many N_j");
  r_opt->excludes(cx_opt);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Context ctx;
  json result;
  std::string summary;
  try {
    if (*parse) {
      Diagram d = ctx.diagram(file);
      std::vector<int> writhes;
      for (int c = 0; c < d.component_count(); ++c) writhes.push_back(d.writhe(c));
      result = {{"components", d.component_count()},
                {"crossings", d.crossing_count()},
                {"writhe", writhes},
                {"pd", render_pd(d)}};
      summary = std::to_string(d.component_count()) + " components, " + std::to_string(d.crossing_count()) +
                " crossings";
    } else if (*lk) {
      Diagram d = ctx.diagram(file);
      result = {{"linking_matrix", linking_matrix(d)}};
      summary = "linking matrix of " + std::to_string(d.component_count()) + " components";
    } else if (*wirt) {
      Presentation pr = wirtinger_presentation(ctx.diagram(file));
      if (eliminate) pr = eliminate_generators(pr);
      result = presentation_json(pr);
      summary = std::to_string(pr.generator_count) + " generators, " + std::to_string(pr.relators.size()) +
                " relators";
    } else if (*surg) {
      Diagram d = ctx.diagram(file);
      std::set<int> chosen;
      if (components.empty()) {
        for (int c = 0; c < d.component_count(); ++c) chosen.insert(c);
      } else {
        for (int c : parse_index(components))
          chosen.insert(c - 1);
      }
      Presentation pr = zero_surgery_presentation(d, chosen);
      result = presentation_json(pr);
      summary = "zero surgery on " + std::to_string(chosen.size()) + " components";
    } else if (*alex) {
      const bool fpg = fs::path(file).extension() == ".fpg";
      LaurentPoly a = fpg ? alexander_poly(ctx.presentation(file), deleted - 1)
                          : alexander_poly(ctx.diagram(file), deleted - 1);
      result = {{"polynomial", poly_json(a)}};
      summary = "Delta = " + a.to_string();
    } else if (*conway) {
      Diagram d = ctx.diagram(file);
      LaurentPoly a = alexander_poly(d);
      LaurentPoly one = d.component_count() >= 2 ? one_variable(a) : a;
      LaurentPoly z = conway_from_alexander(one);
      result = {{"conway", poly_json(z, {"z"})}};
      if (d.component_count() == 3) result["mu123_squared"] = big(mu123_squared(z));
      summary = "Conway = " + z.to_string({"z"});
    } else if (*arf) {
      Diagram d = ctx.diagram(file);
      if (d.component_count() != 1) throw InputError("arf needs a knot");
      LaurentPoly a = alexander_poly(d);
      result = {{"arf", arf_invariant(a)}, {"delta_at_minus_one", big(a.evaluate({-1}))}};
      summary = "Arf = " + std::to_string(result["arf"].get<int>());
    } else if (*torres) {
      Diagram d = ctx.diagram(file);
      if (d.component_count() < 2) throw InputError("torres needs at least two components");
      std::vector<int> rest;
      for (int c = 1; c < d.component_count(); ++c) rest.push_back(c);
      auto lkm = linking_matrix(d);
      std::vector<int> with_first(lkm[0].begin() + 1, lkm[0].end());
      const bool ok = torres_check(alexander_poly(d), alexander_poly(sublink(d, rest)), with_first);
      result = {{"holds", ok}, {"linking_with_first", with_first}};
      summary = ok ? "Torres condition holds" : "Torres condition FAILS";
    } else if (*milnor) {
      Diagram d = ctx.diagram(file);
      if (!index.empty() && max_length > 0) throw InputError("give either --index or --max-length");
      if (!index.empty()) {
        auto idx = parse_index(index);
        MilnorValue v = milnor_mu(d, idx, q);
        result = {{"index", index_key(idx)}, {"value", v.value}, {"indeterminacy", v.indeterminacy}};
        summary = "mu(" + index_key(idx) + ") = " + std::to_string(v.value);
        if (v.indeterminacy != 0) summary += " mod " + std::to_string(v.indeterminacy);
      } else {
        const int len = max_length > 0 ? max_length : d.component_count();
        json table = json::object();
        for (const auto& [k, v] : mu_all_upto(d, len))
          table[k] = {{"value", v.value}, {"indeterminacy", v.indeterminacy}};
        result = {{"table", table}};
        summary = std::to_string(table.size()) + " invariants up to length " + std::to_string(len);
      }
    } else if (*tree) {
      PlanarBinaryTree t = build_tree(m);
      result = {{"h", height_h(m)}, {"k", height_k(m)}, {"leaf_depths", t.leaf_depths()}};
      summary = "T(" + std::to_string(m) + ") has " + std::to_string(t.leaf_count()) + " leaves";
    } else if (*bing) {
      auto idx = parse_index(index);
      Diagram d = tree_to_link(label_leaves(build_tree(static_cast<int>(idx.size())), idx));
      result = diagram_summary(d);
      if (!out_path.empty()) write_file(out_path, render_pd(d));
      summary = "tree link with " + std::to_string(d.crossing_count()) + " crossings";
    } else if (*sat) {
      Diagram k = ctx.diagram(file);
      Diagram d = satellite(k, component - 1, named_pattern(pattern, eta));
      result = diagram_summary(d);
      if (!out_path.empty()) write_file(out_path, render_pd(d));
      summary = "satellite with " + std::to_string(d.crossing_count()) + " crossings";
    } else if (*rep) {
      Presentation pr = ctx.presentation(file);
      SearchConfig cfg;
      cfg.p = p;
      cfg.worker_count = workers;
      if (seed_order == "greedy")
        cfg.seed_order = SeedOrder::Greedy;
      else if (seed_order == "index")
        cfg.seed_order = SeedOrder::Index;
      else
        throw InputError("unknown seed order '" + seed_order + "'");
      SearchStats stats;
      if (!witness_word.empty()) {
        auto it = pr.words.find(witness_word);
        Word w = it != pr.words.end() ? it->second : parse_word(witness_word);
        auto wit = witness_nontrivial(pr, w, cfg, &stats);
        result = {{"p", p}, {"word", witness_word}, {"found", wit.has_value()}};
        if (wit) {
          result["assignment"] = assignment_json(wit->assignment);
          result["image"] = matrix_json(wit->image);
        }
        summary = wit ? "found a representation with non-identity image" : "every representation kills the word";
      } else {
        if (!all) cfg.max_solutions = max_solutions;
        auto sols = search(pr, cfg, &stats);
        std::sort(sols.begin(), sols.end());
        json arr = json::array();
        for (const auto& s : sols) arr.push_back(assignment_json(s));
        result = {{"p", p}, {"count", sols.size()}, {"solutions", arr}};
        summary = std::to_string(sols.size()) + " representations";
      }
      summary += " (" + std::to_string(stats.nodes) + " search nodes)";
    } else if (*ver) {
      Presentation pr = ctx.presentation(file);
      Sl2Assignment a;
      if (file2.empty()) {
        auto s = stored_assignment(pr);
        if (!s) throw InputError("no complete stored assignment in " + file);
        a = *s;
      } else {
        json j;
        try {
          j = json::parse(ctx.read(file2));
          const int pp = j.at("p").get<int>();
          for (const auto& mat : j.at("images"))
            a.emplace_back(pp, mat.at(0).at(0).get<long>(), mat.at(0).at(1).get<long>(), mat.at(1).at(0).get<long>(),
                           mat.at(1).at(1).get<long>());
        } catch (const json::exception& e) {
          throw InputError(std::string("malformed representation JSON: ") + e.what());
        }
      }
      if (static_cast<int>(a.size()) != pr.generator_count)
        throw InputError("representation has " + std::to_string(a.size()) + " matrices for " +
                         std::to_string(pr.generator_count) + " generators");
      VerifyResult v = verify(pr, a);
      result = {{"valid", v.valid}};
      if (!v.valid) result["failing_relators"] = v.failing_relators;
      for (const auto& [name, w] : pr.words) result[name + "_image"] = matrix_json(evaluate_sl2(w, a));
      summary = v.valid ? "all relators hold" : std::to_string(v.failing_relators.size()) + " relators fail";
    } else if (*rho) {
      SeifertMatrix v = parse_seifert_csv(ctx.read(seifert));
      json jumps = json::array();
      for (double t : jump_angles(v)) jumps.push_back(t / (2 * std::numbers::pi));
      const double r = rho_knot(v);
      result = {{"rho", r}, {"jumps", jumps}, {"signature_at_minus_one", lt_signature(v, -1.0)}};
      summary = "rho = " + std::to_string(r);
    } else if (*nj) {
      Rational r;
      if (!r_text.empty()) {
        r = parse_rational(r_text);
      } else if (*cx_opt) {
        r = Rational(budget_R(c_x, c_i).r);
      } else {
        throw InputError("give --R or --cx");
      }
      auto ns = choose_Nj(r, count);
      result = {{"R", static_cast<double>(r)}, {"N", ns}};
      summary = "N_j chosen for R = " + r.str();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  out << result.dump(2) << "\n";
  err << summary << "\n";
  if (!report_path.empty()) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json report = {{"command", app.get_subcommands().front()->get_name()},
                   {"inputs", ctx.inputs},
                   {"outputs", result},
                   {"wall_time_seconds", secs}};
    try {
      write_file(report_path, report.dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 0;
}

}  // namespace linkforge::cli
