#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcshadow/vcshadow.hpp"

namespace {

using namespace vcshadow;

struct RunConfig {
  std::string format = "text";
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t budget = 100'000'000;
  bool timing = false;
};

void emit(const std::string& payload, const RunConfig& cfg) {
  if (cfg.out_path.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + cfg.out_path + "'");
  f << payload;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

Subset parse_element_list(const std::string& text, int n) {
  if (text == "-" || text.empty()) return Subset{};
  Subset s;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int e = 0;
    try {
      e = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad element '" + item + "' in list '" + text + "'");
    }
    if (pos != item.size()) throw std::invalid_argument("bad element '" + item + "'");
    if (e < 1 || e > n) {
      throw std::invalid_argument("element " + std::to_string(e) + " outside 1.." +
                                  std::to_string(n));
    }
    if (s.contains(e)) throw std::invalid_argument("duplicate element " + std::to_string(e));
    s = s.with(e);
  }
  return s;
}

int run_vcdim(const RunConfig& cfg, const std::string& file) {
  const SetSystem fam = load_system_file(file);
  const int v = vc_dimension(fam);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["type"] = "vcdim";
    j["n"] = fam.ground.n;
    j["size"] = fam.size();
    j["vcdim"] = v;
    if (fam.uniformity) {
      j["uniform"] = *fam.uniformity;
    } else {
      j["uniform"] = nullptr;
    }
    emit(dump(j), cfg);
  } else {
    std::string line = "vcdim=" + std::to_string(v) + " size=" + std::to_string(fam.size());
    if (fam.uniformity) line += " uniform=" + std::to_string(*fam.uniformity);
    emit(line + "\n", cfg);
  }
  return 0;
}

int run_certify(const RunConfig& cfg, const std::string& file, int d) {
  const SetSystem fam = load_system_file(file);
  const ShadowCertificate cert = triangular_certificate(fam, d);
  const std::string summary = "|F|=" + cert.family_size.str() +
                              " <= |shadow|=" + cert.shadow_size.str() +
                              " <= C(n,d)=" + cert.binom_nd.str();
  if (!cert.pass()) {
    const auto [r, c] = first_pattern_violation(cert.matrix.entries);
    std::cerr << "internal error: certificate failed";
    if (r >= 0) {
      std::cerr << " at entry (" << cert.matrix.row_labels[static_cast<std::size_t>(r)].str()
                << ", v" << cert.matrix.col_labels[static_cast<std::size_t>(c)].to_string()
                << ")";
    }
    std::cerr << "\n";
    return 1;
  }
  if (cfg.format == "json") {
    emit(dump(certificate_to_json(cert, kVersion)), cfg);
    if (!cfg.out_path.empty()) std::cout << summary << "\n";
  } else {
    if (!cfg.out_path.empty()) {
      // the certificate itself always goes to --out as JSON
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot open output file '" + cfg.out_path + "'");
      f << dump(certificate_to_json(cert, kVersion));
    }
    std::cout << summary << "\n";
  }
  return 0;
}

int run_kk(const RunConfig& cfg, long long m, int d) {
  const KKBound b = kk_bound(m, d);
  const CascadeRep rep = cascade_rep(m, d + 1);
  const Int cb = cascade_bound(m, d + 1);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["type"] = "kk_bound";
    j["m"] = m;
    j["d"] = d;
    j["k"] = b.k;
    j["alpha"] = b.alpha;
    j["alpha_integral"] = b.alpha_integral;
    j["bound"] = b.bound;
    j["cascade_bound"] = cb.str();
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [a, jj] : rep.terms) terms.push_back({a, jj});
    j["cascade_rep"] = std::move(terms);
    emit(dump(j), cfg);
  } else {
    emit("alpha=" + fmt_double(b.alpha) + " bound=" + fmt_double(b.bound) + "\n", cfg);
  }
  return 0;
}

int run_search(const RunConfig& cfg, int n, int d, const std::string& mode) {
  SearchOptions opts;
  opts.mode = search_mode_from_string(mode);
  opts.node_budget = cfg.budget;
  opts.threads = cfg.threads;
  opts.seed = cfg.seed;
  const SearchResult res = max_family_search(n, d, opts);
  if (cfg.format == "json") {
    // byte-stable for fixed (input, seed, version) unless timing is asked for
    emit(dump(search_result_to_json(res, kVersion, cfg.timing)), cfg);
  } else {
    // summary as a comment so the output stays a valid set-system file
    std::string text = "# best=" + std::to_string(res.best_size) +
                       " optimal=" + (res.proved_optimal ? "proved" : "lower-bound-only") +
                       " nodes=" + std::to_string(res.nodes) +
                       " wall_ms=" + fmt_double(res.wall_ms) + "\n";
    text += serialize_system_text(res.family);
    emit(text, cfg);
  }
  if (opts.mode == SearchMode::exact && !res.proved_optimal) {
    std::cerr << "node budget exhausted; result is a lower bound only\n";
    return 4;
  }
  return 0;
}

int run_audit_single(const RunConfig& cfg, int n, int d) {
  const AuditReport r = impossibility_audit(n, d);
  if (cfg.format == "json") {
    emit(dump(audit_report_to_json(r, kVersion)), cfg);
  } else {
    emit("|Y|=" + r.y_size.str() + " required>=" + r.required_y.str() +
             " contradiction=" + (r.contradiction ? "confirmed" : "NOT-CONFIRMED") + "\n",
         cfg);
  }
  return r.contradiction ? 0 : 1;
}

int run_audit_sweep(const RunConfig& cfg, int dmax, int nmax) {
  std::string csv =
      "d,n,y_size,shadow_y_num,shadow_y_den,alpha,required_y,final_diff,contradiction\n";
  bool all = true;
  for (int d = 2; d <= dmax; ++d) {
    for (int n = 2 * d + 2; n <= nmax; ++n) {
      const AuditReport r = impossibility_audit(n, d);
      all = all && r.contradiction;
      csv += std::to_string(d) + "," + std::to_string(n) + "," + r.y_size.str() + "," +
             boost::multiprecision::numerator(r.shadow_y).str() + "," +
             boost::multiprecision::denominator(r.shadow_y).str() + "," + fmt_double(r.alpha) +
             "," + r.required_y.str() + "," + r.final_diff.str() + "," +
             (r.contradiction ? "confirmed" : "NOT-CONFIRMED") + "\n";
    }
  }
  emit(csv, cfg);
  return all ? 0 : 1;
}

int run_construct(const RunConfig& cfg, const std::string& name, int n, int d,
                  bool format_explicit) {
  SetSystem fam = SetSystem::empty(GroundSet(1));
  if (name == "star") {
    fam = star(n, d);
  } else if (name == "ak") {
    fam = ak_candidate(n, d);
  } else if (name == "full") {
    fam = full_family(n, d);
  } else if (name == "ball") {
    fam = hamming_ball(n, d);
  } else {
    throw std::invalid_argument("unknown construction '" + name +
                                "' (expected star|ak|full|ball)");
  }
  bool json = cfg.format == "json";
  if (name == "ball" && !format_explicit) json = true;  // the ball contains the empty set
  emit(json ? dump(system_to_json(fam)) : serialize_system_text(fam), cfg);
  return 0;
}

int run_dmatrix(const RunConfig& cfg, const std::string& file, int d, const std::string& ytext,
                const std::string& ztext) {
  const SetSystem fam = load_system_file(file);
  const Subset y = parse_element_list(ytext, fam.ground.n);
  const Subset z = parse_element_list(ztext, fam.ground.n);
  const WitnessAssignment w = find_witnesses(fam, d);
  const ExtendedMatrix ext = build_extended_matrix(fam, w, d, y, z);
  if (cfg.format == "json") {
    emit(dump(extended_matrix_to_json(ext, kVersion)), cfg);
  } else {
    emit("det=" + ext.det.str() + " m0=" + std::to_string(ext.m0) + " singular<=>m0=1: " +
             (ext.consistent() ? "consistent" : "INCONSISTENT") + "\n",
         cfg);
  }
  return ext.consistent() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"VC-dimension, shadow certificates and extremal search for uniform set systems"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out_path, "write output to a file instead of stdout");
  app.add_option("--seed", cfg.seed, "seed for randomized or shuffled runs")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (never changes results)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget", cfg.budget, "node budget for search")->capture_default_str();
  app.add_flag("--timing", cfg.timing, "include wall-clock time in JSON output");

  std::function<int()> action;

  std::string file;
  int d = 0;

  auto* c_vcdim = app.add_subcommand("vcdim", "VC-dimension and size of a family");
  c_vcdim->fallthrough();
  c_vcdim->add_option("file", file, "set-system file (text or JSON)")->required();
  c_vcdim->callback([&] { action = [&] { return run_vcdim(cfg, file); }; });

  auto* c_cert = app.add_subcommand("certify",
                                    "independence certificate for |F| <= |shadow_d| <= C(n,d)");
  c_cert->fallthrough();
  c_cert->add_option("file", file)->required();
  c_cert->add_option("d", d, "VC-dimension bound")->required();
  c_cert->callback([&] { action = [&] { return run_certify(cfg, file, d); }; });

  long long kk_m = 0;
  auto* c_kk = app.add_subcommand("kk", "Kruskal-Katona shadow lower bounds");
  c_kk->fallthrough();
  c_kk->add_option("m", kk_m, "family size")->required();
  c_kk->add_option("d", d, "shadow order")->required();
  c_kk->callback([&] { action = [&] { return run_kk(cfg, kk_m, d); }; });

  int sn = 0;
  std::string mode = "exact";
  auto* c_search = app.add_subcommand("search", "maximum family search");
  c_search->fallthrough();
  c_search->add_option("n", sn)->required();
  c_search->add_option("d", d)->required();
  c_search->add_option("--mode", mode)->check(CLI::IsMember({"exact", "greedy", "local"}));
  c_search->callback([&] { action = [&] { return run_search(cfg, sn, d, mode); }; });

  std::vector<int> sweep;
  auto* c_audit = app.add_subcommand("audit", "impossibility arithmetic for the C(n,d) cap");
  c_audit->fallthrough();
  c_audit->add_option("n", sn);
  c_audit->add_option("d", d);
  c_audit->add_option("--sweep", sweep, "run the full (d, n) table up to dmax nmax")
      ->expected(2);
  c_audit->callback([&] {
    action = [&] {
      if (!sweep.empty()) return run_audit_sweep(cfg, sweep[0], sweep[1]);
      if (sn == 0) throw CLI::ValidationError("audit", "need n and d, or --sweep dmax nmax");
      return run_audit_single(cfg, sn, d);
    };
  });

  std::string cname;
  auto* c_con = app.add_subcommand("construct", "named families: star, ak, full, ball");
  c_con->fallthrough();
  c_con->add_option("name", cname)->required();
  c_con->add_option("n", sn)->required();
  c_con->add_option("d", d)->required();
  c_con->callback([&] {
    action = [&] { return run_construct(cfg, cname, sn, d, app.count("--format") > 0); };
  });

  std::string ytext, ztext;
  auto* c_dm = app.add_subcommand("dmatrix", "extended matrix: det(D), m0 and the singularity law");
  c_dm->fallthrough();
  c_dm->add_option("file", file)->required();
  c_dm->add_option("d", d)->required();
  c_dm->add_option("Y", ytext, "comma-separated elements of Y")->required();
  c_dm->add_option("Z", ztext, "comma-separated elements of Z, or '-' for empty")->required();
  c_dm->callback([&] { action = [&] { return run_dmatrix(cfg, file, d, ytext, ztext); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return action ? action() : 1;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const witness_error& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    std::cerr << "shattered set: " << e.shattered_member.to_string() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
