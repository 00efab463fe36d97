#pragma once

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mbound/report.hpp"

namespace mbound::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageOrData = 2 };

namespace detail {

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::vector<std::string> s;
  for (int x : v) s.push_back(std::to_string(x));
  return join(s, ",");
}

/// "T=value" pairs from repeated flags.
inline std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected TYPE=VALUE, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

inline std::string text_matrix(const FourierMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.n);
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t k = 0; k < m.n; ++k) {
      cells[i].push_back(render(m(i, k)));
      width = std::max(width, cells[i].back().size());
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < m.n; ++i) {
    os << "  ";
    for (std::size_t k = 0; k < m.n; ++k) os << std::string(width - cells[i][k].size() + (k ? 2 : 0), ' ') << cells[i][k];
    os << "   " << m.labels[i] << "\n";
  }
  return os.str();
}

inline void text_bound(std::ostream& os, const json& b) {
  os << "type " << b["type"].get<std::string>() << ": C = " << b["bound"].get<std::string>() << " = M_Phi "
     << b["m_phi"].get<std::string>() << " * |W| " << b["weyl_order"] << " * c " << b["c_gx"]
     << (b["c_estimated"].get<bool>() ? " (estimated)" : "") << "\n";
  os << "  N_Phi = " << b["n_phi"] << "; " << b["validity"].get<std::string>() << "\n";
  if (!b["breakdown"].empty()) {
    os << "  breakdown (subsystem: M_Phi, N_Phi):\n";
    for (const auto& s : b["breakdown"])
      os << "    " << s["subsystem"].get<std::string>() << ": " << s["m_phi"].get<std::string>() << ", " << s["n_phi"] << "\n";
  }
  if (!b["unevaluated_term"].is_null()) os << "  unevaluated: " << b["unevaluated_term"].get<std::string>() << "\n";
}

/// Plain-text rendering of a report; JSON stays the canonical form.
inline std::string render_text(const Report& r) {
  std::ostringstream os;
  const auto& o = r.outputs;
  os << "# " << join(r.command, " ") << "\n";
  if (o.contains("error")) os << "error: " << o["error"].get<std::string>() << "\n";
  if (o.contains("estimate")) {
    const auto& e = o["estimate"];
    os << "space " << e["series"]["space"].get<std::string>() << "\n";
    for (const auto& p : e["series"]["points"]) os << "  q = " << p["q"] << ": " << p["count"] << " points\n";
    os << "  d = " << e["d"] << ", c = " << e["c"] << " (extrapolated " << e["extrapolated"].get<std::string>() << ", residual "
       << e["residual"].get<std::string>() << "), " << (e["confident"].get<bool>() ? "confident" : "LOW CONFIDENCE") << "\n";
  }
  if (o.contains("bound_report")) {
    text_bound(os, o["bound_report"]);
  }
  if (o.contains("fourier_matrix")) {
    os << "Fourier matrix for Gamma = " << r.inputs["gamma"].get<std::string>() << " (" << o["m_set_size"] << " elements of M(Gamma))\n";
    os << text_matrix(fourier_matrix_from_json(o["fourier_matrix"]));
  }
  if (o.contains("families")) {
    for (const auto& f : o["families"]) {
      os << "family " << f["id"] << " of " << f["type"].get<std::string>() << ", Gamma = " << f["gamma"].get<std::string>() << "\n";
      for (const auto& m : f["members"]) {
        std::vector<std::string> coeffs;
        for (const auto& c : m["positive_row"]["coefficients"]) coeffs.push_back(c.get<std::string>());
        os << "  " << m["label"].get<std::string>() << " at " << m["m_label"].get<std::string>()
           << (m["special"].get<bool>() ? " (special)" : "") << "; positive row " << m["positive_row"]["row_of"].get<std::string>()
           << ": " << join(coeffs, " ") << "\n";
      }
      os << text_matrix(fourier_matrix_from_json(f["fourier"]));
    }
  }
  if (o.contains("subsystems")) {
    os << o["subsystems"].size() << " classes of closed subsystems:\n";
    for (const auto& s : o["subsystems"]) os << "  " << s["type"].get<std::string>() << " (" << s["size"] << " roots)\n";
  }
  if (o.contains("dl_bound")) {
    for (const auto& d : o["dl_bound"]) {
      os << "q = " << d["q"] << ", space " << d["space"].get<std::string>() << ": max |<R_T(theta), pi>| = " << d["max_abs"]
         << " at " << d["argmax"]["torus"].get<std::string>() << " theta " << d["argmax"]["theta"] << "; c = " << d["c"] << " -> "
         << (d["pass"].get<bool>() ? "pass" : "FAIL") << " (" << d["characters_checked"] << " characters)\n";
      for (const auto& w : d["violations"])
        os << "  witness: " << w["torus"].get<std::string>() << " theta " << w["theta"] << " gives " << w["value"] << "\n";
    }
  }
  if (o.contains("theorem_a")) {
    const auto& t = o["theorem_a"];
    os << "space " << t["space"].get<std::string>() << ", C = " << t["C"] << "\n";
    os << "  q  max-mult  degree  irreducibles  |X|\n";
    for (const auto& row : t["rows"])
      os << "  " << row["q"] << "  " << row["max_multiplicity"] << "  " << row["argmax_degree"] << "  " << row["num_irreducibles"]
         << "  " << row["space_size"] << "\n";
    os << "  max " << t["max_multiplicity"] << ", constant in q: " << (t["constant_in_q"].get<bool>() ? "yes" : "no")
       << ", strict (< C): " << (t["pass_strict"].get<bool>() ? "pass" : "FAIL")
       << ", non-strict (<= C): " << (t["pass_nonstrict"].get<bool>() ? "pass" : "FAIL") << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

inline std::vector<int> checked_qs(const std::vector<int>& qs) {
  if (qs.empty()) throw std::invalid_argument("--q needs at least one value");
  for (int q : qs) {
    const auto& s = supported_gl2_orders();
    if (std::find(s.begin(), s.end(), q) == s.end())
      throw std::invalid_argument("unsupported q = " + std::to_string(q) + " (supported: 2,3,4,5,7,8,9)");
  }
  return qs;
}

inline void check_space(const std::string& label) {
  const auto& s = space_labels();
  if (std::find(s.begin(), s.end(), label) == s.end())
    throw std::invalid_argument("unknown space '" + label + "' (expected flag, split-torus or torus-normalizer)");
}

}  // namespace detail

/// Runs one subcommand. Writes the report to `out` and diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicity bounds for spherical varieties over finite fields", "mbound"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  bool no_cache = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--no-cache", no_cache, "Do not read or write the character-table cache");

  // bound
  auto* bound = app.add_subcommand("bound", "Multiplicity bound C = M_Phi * |W| * c(G,X)");
  std::string b_type, b_series, b_c_space;
  std::int64_t b_c = 0;
  bool b_global = false;
  std::vector<std::string> b_n_phi, b_coeffs;
  std::vector<int> b_c_q{2, 3, 4, 5};
  bound->add_option("--type", b_type, "Cartan type, e.g. B2, A1xG2, 2A3")->required();
  bound->add_option("--c", b_c, "Component count c(G,X)")->check(CLI::PositiveNumber);
  bound->add_option("--c-from-space", b_c_space, "Estimate c(G,X) from a GL2 space instead of --c");
  bound->add_option("--c-q", b_c_q, "q values for --c-from-space")->delimiter(',');
  bound->add_flag("--global", b_global, "Maximize over closed subsystems of the dual type");
  bound->add_option("--series", b_series, "Bound one Lusztig series with this centralizer type");
  bound->add_option("--n-phi", b_n_phi, "Override N_Phi, as TYPE=N")->take_all();
  bound->add_option("--coefficients", b_coeffs, "Override C_Phi, as TYPE=r1,r2,...")->take_all();

  // fourier
  auto* fourier = app.add_subcommand("fourier", "Exact non-abelian Fourier matrix of M(Gamma)");
  std::string f_gamma;
  fourier->add_option("--gamma", f_gamma, "1, S2, S2^e, S3, S4 or S5")->required();

  // families
  auto* families = app.add_subcommand("families", "Unipotent families with Fourier matrices and positive rows");
  std::string fam_type;
  families->add_option("--type", fam_type, "Irreducible Cartan type with curated data")->required();

  // subsystems
  auto* subsystems = app.add_subcommand("subsystems", "Closed subsystems up to Weyl conjugacy");
  std::string s_type;
  subsystems->add_option("--type", s_type, "Cartan type of rank <= 6")->required();

  // verify-gl2
  auto* verify = app.add_subcommand("verify-gl2", "Brute-force checks on GL2(F_q)");
  std::vector<int> v_q{2, 3, 5, 7};
  std::string v_space = "flag";
  std::int64_t v_c = 0, v_C = 0;
  bool v_theorem_a = false, v_nonstrict = false;
  verify->add_option("--q", v_q, "Comma-separated field sizes")->delimiter(',');
  verify->add_option("--space", v_space, "flag, split-torus or torus-normalizer");
  verify->add_option("--c", v_c, "c(G,X) for the Deligne-Lusztig bound (estimated when omitted)")->check(CLI::PositiveNumber);
  verify->add_flag("--theorem-a", v_theorem_a, "Check the maximum multiplicity against --C");
  verify->add_option("--C", v_C, "Constant for --theorem-a (defaults to the global bound)")->check(CLI::PositiveNumber);
  verify->add_flag("--non-strict", v_nonstrict, "Exit status follows multiplicity <= C instead of < C");

  // estimate-c
  auto* estimate = app.add_subcommand("estimate-c", "Estimate c(G,X) from exact point counts");
  std::string e_space;
  std::vector<int> e_q{2, 3, 4, 5};
  estimate->add_option("--space", e_space, "flag, split-torus or torus-normalizer")->required();
  estimate->add_option("--q", e_q, "Comma-separated field sizes (at least 3)")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mbound: " << e.what() << "\n" << "run 'mbound --help' for usage\n";
    return kUsageOrData;
  }

  Report rep;
  rep.command = args;
  rep.command.insert(rep.command.begin(), "mbound");
  const TableCache cache = no_cache ? TableCache::disabled() : TableCache::from_environment();
  if (cache.enabled()) rep.notes.push_back("character tables cached under " + cache.directory()->string());

  auto estimate_for = [&](const std::string& space, const std::vector<int>& qs) {
    const auto e = estimate_c_gx(space, detail::checked_qs(qs), cache);
    rep.outputs["estimate"] = to_json_value(e);
    rep.notes.push_back("c(G,X) = " + std::to_string(e.c) + " estimated by estimate_c_gx(" + space + ", q = " + detail::join_ints(qs) +
                        ")" + (e.confident ? "" : " with LOW confidence"));
    return e.c;
  };

  try {
    if (bound->parsed()) {
      BoundConfig cfg;
      rep.inputs = {{"type", b_type}, {"global", b_global}};
      if (!b_c_space.empty()) {
        detail::check_space(b_c_space);
        if (b_c) throw std::invalid_argument("give either --c or --c-from-space, not both");
        cfg.c_gx = estimate_for(b_c_space, b_c_q);
        cfg.c_estimated = true;
        rep.inputs["c_from_space"] = b_c_space;
      } else {
        if (!b_c) throw std::invalid_argument("bound needs --c or --c-from-space");
        cfg.c_gx = b_c;
      }
      rep.inputs["c"] = cfg.c_gx;
      for (const auto& s : b_n_phi) {
        const auto [t, v] = detail::split_assignment(s);
        cfg.n_phi_overrides[CartanType::parse(t).str()] = std::stoll(v);
      }
      for (const auto& s : b_coeffs) {
        const auto [t, v] = detail::split_assignment(s);
        std::vector<Rational> coeffs;
        std::stringstream ss(v);
        for (std::string item; std::getline(ss, item, ',');) coeffs.push_back(Rational::parse(item));
        cfg.coefficient_overrides[CartanType::parse(t).str()] = coeffs;
      }
      BoundReport br;
      std::string op;
      if (!b_series.empty()) {
        br = bound_series(b_type, b_series, cfg);
        op = "bound_series";
      } else if (b_global) {
        br = global_bound(b_type, cfg);
        op = "global_bound";
      } else {
        br = bound_unipotent(b_type, cfg);
        op = "bound_unipotent";
      }
      rep.outputs["bound_report"] = to_json_value(br);
      rep.outputs["source"] = op;
      for (const auto& n : br.notes) rep.notes.push_back(n);
    } else if (fourier->parsed()) {
      const auto g = GammaType::parse(f_gamma);
      rep.inputs = {{"gamma", g.str()}};
      const auto m = fourier_matrix(g);
      rep.outputs["fourier_matrix"] = to_json_value(m);
      rep.outputs["m_set_size"] = m.n;
      rep.outputs["source"] = "fourier_matrix";
    } else if (families->parsed()) {
      rep.inputs = {{"type", fam_type}};
      json list = json::array();
      for (const auto& f : families_of_type(fam_type)) list.push_back(to_json_value(f));
      rep.outputs["families"] = list;
      rep.outputs["source"] = "families_of_type, positive_row";
    } else if (subsystems->parsed()) {
      const auto rs = build_root_system(CartanType::parse(s_type));
      rep.inputs = {{"type", rs.type.str()}};
      json list = json::array();
      for (const auto& s : closed_subsystems(rs)) list.push_back(to_json_value(rs, s));
      rep.outputs["subsystems"] = list;
      rep.outputs["source"] = "closed_subsystems";
    } else if (verify->parsed()) {
      detail::check_space(v_space);
      const auto qs = detail::checked_qs(v_q);
      rep.inputs = {{"q", qs}, {"space", v_space}};
      std::int64_t c = v_c;
      bool estimated = false;
      if (!c) {
        c = estimate_for(v_space, {2, 3, 4, 5});
        estimated = true;
      }
      rep.inputs["c"] = c;
      rep.inputs["c_estimated"] = estimated;
      if (v_theorem_a) {
        std::int64_t C = v_C;
        if (!C) {
          BoundConfig cfg;
          cfg.c_gx = c;
          cfg.c_estimated = estimated;
          const auto gb = global_bound("A1", cfg);
          C = gb.bound.to_int64();
          rep.outputs["bound_report"] = to_json_value(gb);
          rep.notes.push_back("C = " + gb.bound.str() + " from global_bound(A1, c = " + std::to_string(c) + ")");
        }
        rep.inputs["C"] = C;
        rep.inputs["reading"] = v_nonstrict ? "non-strict" : "strict";
        const auto t = verify_theorem_a(v_space, qs, C, cache);
        rep.outputs["theorem_a"] = to_json_value(t);
        rep.outputs["source"] = "verify_theorem_a";
        if (!(v_nonstrict ? t.pass_nonstrict : t.pass_strict)) rep.exit_status = kVerificationFailed;
      } else {
        std::vector<std::future<DlBoundReport>> jobs;
        for (int q : qs)
          jobs.push_back(std::async(std::launch::async, [q, &v_space, c, &cache] {
            const auto inst = shared_instance(q, cache);
            return verify_dl_bound(*inst, make_space(*inst, v_space), c);
          }));
        json list = json::array();
        for (auto& j : jobs) {
          const auto r = j.get();
          if (!r.pass) rep.exit_status = kVerificationFailed;
          list.push_back(to_json_value(r));
        }
        rep.outputs["dl_bound"] = list;
        rep.outputs["source"] = "verify_dl_bound";
      }
    } else if (estimate->parsed()) {
      detail::check_space(e_space);
      rep.inputs = {{"space", e_space}, {"q", detail::checked_qs(e_q)}};
      estimate_for(e_space, e_q);
      rep.outputs["source"] = "count_fixed_points, estimate_components";
    }
  } catch (const std::exception& e) {
    rep.outputs = {{"error", e.what()}};
    rep.exit_status = kUsageOrData;
    err << "mbound: " << e.what() << "\n";
  }

  if (format == "json") out << rep.to_json().dump(2) << "\n";
  else out << detail::render_text(rep);
  return rep.exit_status;
}

}  // namespace mbound::cli
