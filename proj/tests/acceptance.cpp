// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. An optional argv selects a single criterion by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "vcshadow/vcshadow.hpp"

using namespace vcshadow;

namespace {

struct CritResult {
  bool pass = false;
  std::string detail;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- suites --

struct FamilyInstance {
  int n = 0, d = 0;
  SetSystem fam;
};

constexpr std::uint64_t kSuiteSeed = 20250809;

// 200 uniform families with the VC bound enforced by member deletion.
std::vector<FamilyInstance> certificate_suite() {
  Rng rng(kSuiteSeed);
  std::vector<FamilyInstance> out;
  out.reserve(200);
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 3;
    const int nmin = d + 3;
    const int n = nmin + (i / 3) % (9 - nmin + 1);
    const double density = 0.3 + 0.5 * rng.unit();
    out.push_back({n, d, random_vc_bounded_family(n, d, rng, density)});
  }
  return out;
}

struct ExtendedInstance {
  int n = 0, d = 0;
  SetSystem fam;
  WitnessAssignment w;
  Subset y, z;
};

// 500 (family, witnesses, Y, Z) tuples with random valid witnesses.
std::vector<ExtendedInstance> extended_suite() {
  Rng rng(kSuiteSeed + 1);
  std::vector<ExtendedInstance> out;
  out.reserve(500);
  while (out.size() < 500) {
    const int d = 2 + static_cast<int>(out.size() % 2);
    const int nmin = d + 3;
    const int n = nmin + static_cast<int>(rng.below(static_cast<std::uint64_t>(8 - nmin + 1)));
    SetSystem fam = random_vc_bounded_family(n, d, rng, 0.25 + 0.5 * rng.unit());
    if (Int(fam.size()) == binom(n, d + 1)) continue;  // complement must be nonempty
    WitnessAssignment w = random_witnesses(fam, d, rng);
    const auto [y, z] = random_yz(fam, d, rng);
    out.push_back({n, d, std::move(fam), std::move(w), y, z});
  }
  return out;
}

// ------------------------------------------------------------- criteria --

// Hamming balls: exact size and VC-dimension d for every n <= 8.
CritResult criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  long cases = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int d = 0; d <= n; ++d) {
      const SetSystem ball = hamming_ball(n, d);
      if (Int(ball.size()) != sum_binom(n, d)) {
        return {false, "size mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d)};
      }
      if (vc_dimension(ball) != d) {
        return {false, "vc mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d)};
      }
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 10.0) return {false, "exceeded 10 s: " + std::to_string(secs)};
  return {true, std::to_string(cases) + " (n,d) pairs, size and VC-dimension exact"};
}

// Shared by criteria 2 and 8: certificates for the whole suite.
bool run_certificate_suite(const std::vector<FamilyInstance>& suite, int threads,
                           std::string* json_out, std::string* fail) {
  std::vector<std::string> jsons(suite.size());
  std::vector<std::string> errors(suite.size());
  parallel_for_indexed(suite.size(), threads, [&](std::size_t i) {
    const auto& inst = suite[i];
    const ShadowCertificate cert = triangular_certificate(inst.fam, inst.d);
    std::string err;
    if (!cert.triangular) err = "triangularity failed";
    if (err.empty() && cert.rank != cert.row_count) err = "rank below row count";
    if (err.empty() && !(cert.family_size <= cert.shadow_size)) err = "|F| > |shadow|";
    errors[i] = err;
    jsons[i] = certificate_to_json(cert, kVersion).dump(2);
  });
  for (std::size_t i = 0; i < suite.size(); ++i) {
    if (!errors[i].empty()) {
      if (fail) {
        *fail = "instance " + std::to_string(i) + " (n=" + std::to_string(suite[i].n) +
                ", d=" + std::to_string(suite[i].d) + "): " + errors[i];
      }
      return false;
    }
  }
  if (json_out) {
    json_out->clear();
    for (const auto& j : jsons) *json_out += j + "\n";
  }
  return true;
}

CritResult criterion2(const std::vector<FamilyInstance>& suite, std::string* artifact) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string fail;
  if (!run_certificate_suite(suite, 1, artifact, &fail)) return {false, fail};
  const double secs = seconds_since(t0);
  if (secs >= 60.0) return {false, "exceeded 60 s: " + std::to_string(secs)};
  return {true, "200 families: triangular, full rank, |F| <= |shadow| throughout"};
}

CritResult criterion3(const std::vector<FamilyInstance>& suite) {
  for (std::size_t i = 0; i < suite.size(); ++i) {
    if (Int(suite[i].fam.size()) > binom(suite[i].n, suite[i].d)) {
      return {false, "instance " + std::to_string(i) + " exceeds C(n,d)"};
    }
  }
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{5, 2}, {7, 3}}) {
    const SetSystem full = full_family(n, d);
    if (!vc_le_uniform(full, d)) {
      return {false, "complete family infeasible at n=" + std::to_string(n)};
    }
    if (Int(full.size()) != binom(n, d)) {
      return {false, "tightness fails at n=" + std::to_string(n)};
    }
  }
  return {true, "|F| <= C(n,d) on the suite; equality at (5,2) and (7,3)"};
}

CritResult criterion4(std::string* artifact, int threads = 1) {
  SearchOptions opts;
  opts.node_budget = 100'000'000;
  opts.threads = threads;
  const SearchResult r = max_family_search(6, 2, opts);
  if (artifact) *artifact = search_result_to_json(r, kVersion, false).dump(2);
  if (!r.proved_optimal) return {false, "node budget exhausted"};
  if (r.best_size < 11 || r.best_size > 14) {
    return {false, "optimal value " + std::to_string(r.best_size) + " outside [11,14]"};
  }
  if (Int(r.best_size) >= binom(6, 2)) return {false, "bound not strict"};
  return {true, "maximum at (6,2) proved: " + std::to_string(r.best_size) + " (nodes " +
                    std::to_string(r.nodes) + ")"};
}

bool run_extended_suite(const std::vector<ExtendedInstance>& suite, int threads,
                        std::string* json_out, std::string* fail) {
  std::vector<std::string> jsons(suite.size());
  std::vector<std::string> errors(suite.size());
  parallel_for_indexed(suite.size(), threads, [&](std::size_t i) {
    const auto& inst = suite[i];
    const ExtendedMatrix ext = build_extended_matrix(inst.fam, inst.w, inst.d, inst.y, inst.z);
    std::string err;
    if (!ext.blocks_ok) err = "block pattern broken";
    if (err.empty() && ext.t_dot_r != ext.m0) err = "T.R != m0";
    if (err.empty() && ext.singular() != (ext.m0 == 1)) err = "singularity law violated";
    errors[i] = err;
    jsons[i] = extended_matrix_to_json(ext, kVersion).dump(2);
  });
  for (std::size_t i = 0; i < suite.size(); ++i) {
    if (!errors[i].empty()) {
      if (fail) *fail = "instance " + std::to_string(i) + ": " + errors[i];
      return false;
    }
  }
  if (json_out) {
    json_out->clear();
    for (const auto& j : jsons) *json_out += j + "\n";
  }
  return true;
}

CritResult criterion5(const std::vector<ExtendedInstance>& suite, std::string* artifact) {
  std::string fail;
  if (!run_extended_suite(suite, 1, artifact, &fail)) return {false, fail};
  return {true, "500 instances: det(D)=0 iff m0=1 and T.R=m0, exact"};
}

CritResult criterion6() {
  for (long long a = 3; a <= 12; ++a) {
    if (kk_lower_bound(binom_ll(a, 3), 2) != binom(a, 2).convert_to<double>()) {
      return {false, "fractional bound not exact at a=" + std::to_string(a)};
    }
  }
  Rng rng(kSuiteSeed + 2);
  for (int i = 0; i < 100; ++i) {
    const int n = 5 + static_cast<int>(rng.below(4));
    SetSystem fam = random_uniform_family(n, 3, 0.2 + 0.6 * rng.unit(), rng);
    if (fam.members.empty()) {
      --i;
      continue;
    }
    const Int sh = shadow(fam, 2).size();
    const double frac = kk_lower_bound(fam.size(), 2);
    const Int casc = cascade_bound(fam.size(), 3);
    if (sh.convert_to<double>() < frac - 1e-9) {
      return {false, "fractional bound above a real shadow (m=" + std::to_string(fam.size()) + ")"};
    }
    if (sh < casc) {
      return {false, "cascade bound above a real shadow (m=" + std::to_string(fam.size()) + ")"};
    }
  }
  for (int k : {2, 3, 4}) {
    for (long long m = 1; m <= 10000; ++m) {
      const double a = solve_alpha(m, k);
      if (std::abs(gen_binomial(a, k) - static_cast<double>(m)) > 1e-9) {
        return {false, "round-trip error above 1e-9 at m=" + std::to_string(m) +
                           " k=" + std::to_string(k)};
      }
    }
  }
  return {true, "exact at integer alpha; valid on 100 random families; round-trip <= 1e-9"};
}

CritResult criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  long cases = 0;
  for (int d = 2; d <= 14; ++d) {
    for (int n = 2 * d + 2; n <= 30; ++n) {
      const AuditReport r = impossibility_audit(n, d);
      if (!r.contradiction || !r.final_negative) {
        return {false, "no contradiction at n=" + std::to_string(n) + " d=" + std::to_string(d)};
      }
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 1.0) return {false, "exceeded 1 s: " + std::to_string(secs)};
  return {true, std::to_string(cases) + " (n,d) pairs, contradiction confirmed exactly"};
}

CritResult criterion8(const std::vector<FamilyInstance>& cert_suite,
                      const std::vector<ExtendedInstance>& ext_suite,
                      const std::string& crit2_t1, const std::string& crit4_t1,
                      const std::string& crit5_t1) {
  std::string crit2_t4;
  std::string fail;
  if (!run_certificate_suite(cert_suite, 4, &crit2_t4, &fail)) return {false, fail};
  if (crit2_t4 != crit2_t1) return {false, "certificate suite JSON differs across threads"};

  std::string crit4_t4;
  const CritResult c4 = criterion4(&crit4_t4, 4);
  if (!c4.pass) return {false, "search rerun failed: " + c4.detail};
  if (crit4_t4 != crit4_t1) return {false, "search JSON differs across threads"};

  std::string crit5_t4;
  if (!run_extended_suite(ext_suite, 4, &crit5_t4, &fail)) return {false, fail};
  if (crit5_t4 != crit5_t1) return {false, "extended-matrix suite JSON differs across threads"};

  return {true, "criteria 2, 4, 5 byte-identical with 1 and 4 threads"};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  std::vector<FamilyInstance> cert_suite;
  std::vector<ExtendedInstance> ext_suite;
  std::string crit2_json, crit4_json, crit5_json;

  struct Entry {
    int id;
    const char* name;
    std::function<CritResult()> run;
  };

  const std::vector<Entry> entries = {
      {1, "Hamming-ball sharpness", [&] { return criterion1(); }},
      {2, "shadow certificates on 200 random families",
       [&] { return criterion2(cert_suite, &crit2_json); }},
      {3, "size cap |F| <= C(n,d) and tightness at n = 2d+1",
       [&] { return criterion3(cert_suite); }},
      {4, "exact search at (6,2)", [&] { return criterion4(&crit4_json); }},
      {5, "extended-matrix singularity law on 500 instances",
       [&] { return criterion5(ext_suite, &crit5_json); }},
      {6, "Kruskal-Katona bounds", [&] { return criterion6(); }},
      {7, "impossibility audit table", [&] { return criterion7(); }},
      {8, "determinism across thread counts",
       [&] { return criterion8(cert_suite, ext_suite, crit2_json, crit4_json, crit5_json); }},
  };

  const bool need_suites = only == 0 || only == 2 || only == 3 || only == 5 || only == 8;
  if (need_suites) {
    cert_suite = certificate_suite();
    ext_suite = extended_suite();
  }
  if (only == 8) {  // criterion 8 compares against the cached single-thread runs
    criterion2(cert_suite, &crit2_json);
    criterion4(&crit4_json);
    criterion5(ext_suite, &crit5_json);
  }

  int failures = 0;
  for (const auto& e : entries) {
    if (only != 0 && e.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CritResult r;
    try {
      r = e.run();
    } catch (const std::exception& ex) {
      r = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = seconds_since(t0);
    std::printf("[%s] criterion %d: %s — %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", e.id, e.name,
                r.detail.c_str(), secs);
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
