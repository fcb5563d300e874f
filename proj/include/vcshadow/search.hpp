#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vcshadow/binomial.hpp"
#include "vcshadow/constructions.hpp"
#include "vcshadow/parallel.hpp"
#include "vcshadow/set_system.hpp"

namespace vcshadow {

enum class SearchMode { exact, greedy, local };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::exact: return "exact";
    case SearchMode::greedy: return "greedy";
    case SearchMode::local: return "local";
  }
  return "?";
}

inline SearchMode search_mode_from_string(const std::string& s) {
  if (s == "exact") return SearchMode::exact;
  if (s == "greedy") return SearchMode::greedy;
  if (s == "local") return SearchMode::local;
  throw std::invalid_argument("unknown search mode '" + s + "'");
}

struct SearchOptions {
  SearchMode mode = SearchMode::exact;
  std::uint64_t node_budget = 100'000'000;
  int threads = 1;
  std::uint64_t seed = 0;  // nonzero shuffles the candidate order
};

struct SearchResult {
  int n = 0, d = 0;
  SearchMode mode = SearchMode::exact;
  SetSystem family;
  long best_size = 0;
  bool proved_optimal = false;
  std::uint64_t nodes = 0;
  double wall_ms = 0.0;
};

inline nlohmann::ordered_json search_result_to_json(const SearchResult& r, const char* version,
                                                    bool include_timing = true) {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["type"] = "search_result";
  j["n"] = r.n;
  j["d"] = r.d;
  j["mode"] = to_string(r.mode);
  j["best_size"] = r.best_size;
  j["proved_optimal"] = r.proved_optimal;
  j["nodes"] = r.nodes;
  if (include_timing) j["wall_ms"] = r.wall_ms;
  // the family as the lines of its text-format file
  nlohmann::ordered_json fam = nlohmann::ordered_json::array();
  fam.push_back("n " + std::to_string(r.family.ground.n));
  for (Subset m : r.family.members) {
    std::string line;
    for (int e : m.elements()) {
      if (!line.empty()) line += ' ';
      line += std::to_string(e);
    }
    fam.push_back(std::move(line));
  }
  j["family"] = std::move(fam);
  return j;
}

namespace detail {

// Incremental feasibility for "no member is shattered": per chosen member a
// table of trace multiplicities over its 2^(d+1) subsets. A member is
// shattered when no subset is missing. Push/pop and the non-mutating
// can_add probe are O(|chosen|); trace indices for candidate pairs are
// precomputed when they fit a byte.
class ShatterTracker {
 public:
  ShatterTracker(const std::vector<Subset>* cands, int d,
                 const std::vector<std::uint8_t>* pair_table = nullptr)
      : cands_(cands), k_(d + 1), width_(1 << (d + 1)), table_(pair_table) {
    positions_.resize(cands->size());
    for (std::size_t i = 0; i < cands->size(); ++i) {
      positions_[i] = (*cands)[i].elements();
    }
    stack_.resize(cands->size());
    for (auto& s : stack_) s.cnt.assign(static_cast<std::size_t>(width_), 0);
  }

  // Trace index of cand[a] cap cand[b] inside cand[a]'s coordinates.
  static std::vector<std::uint8_t> build_pair_table(const std::vector<Subset>& cands, int d) {
    if (d + 1 > 8 || cands.size() > 4096) return {};
    const std::size_t m = cands.size();
    std::vector<std::uint8_t> table(m * m);
    std::vector<std::vector<int>> pos(m);
    for (std::size_t i = 0; i < m; ++i) pos[i] = cands[i].elements();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const Subset inter = cands[a] & cands[b];
        int idx = 0;
        for (int j = 0; j < d + 1; ++j) {
          if (inter.contains(pos[a][static_cast<std::size_t>(j)])) idx |= 1 << j;
        }
        table[a * m + b] = static_cast<std::uint8_t>(idx);
      }
    }
    return table;
  }

  bool push(int c) {
    ++probes_;
    Slot& s = stack_[static_cast<std::size_t>(top_)];
    s.cand = c;
    std::fill(s.cnt.begin(), s.cnt.end(), std::uint16_t{0});
    s.missing = width_;
    auto bump = [&](Slot& sl, int t) {
      if (sl.cnt[static_cast<std::size_t>(t)]++ == 0 && --sl.missing == 0) ++shattered_;
    };
    for (long i = 0; i < top_; ++i) {
      Slot& m = stack_[static_cast<std::size_t>(i)];
      bump(m, pair_trace(m.cand, c));
      bump(s, pair_trace(c, m.cand));
    }
    bump(s, width_ - 1);  // the member's own full trace
    ++top_;
    return shattered_ == 0;
  }

  void pop() {
    --top_;
    Slot& s = stack_[static_cast<std::size_t>(top_)];
    if (s.missing == 0) --shattered_;
    for (long i = 0; i < top_; ++i) {
      Slot& m = stack_[static_cast<std::size_t>(i)];
      const int t = pair_trace(m.cand, s.cand);
      if (--m.cnt[static_cast<std::size_t>(t)] == 0 && m.missing++ == 0) --shattered_;
    }
  }

  // Would the family stay feasible if c were added? No state change.
  bool can_add(int c) {
    ++probes_;
    std::uint64_t seen_lo = 0, seen_hi = 0;
    auto mark = [&](int t) {
      if (t < 64) {
        seen_lo |= std::uint64_t{1} << t;
      } else {
        seen_hi |= std::uint64_t{1} << (t - 64);
      }
    };
    for (long i = 0; i < top_; ++i) {
      const Slot& m = stack_[static_cast<std::size_t>(i)];
      const int tm = pair_trace(m.cand, c);
      if (m.missing == 1 && m.cnt[static_cast<std::size_t>(tm)] == 0) return false;
      mark(pair_trace(c, m.cand));
    }
    mark(width_ - 1);
    if (width_ <= 64) {
      return seen_lo != ((width_ == 64) ? ~std::uint64_t{0}
                                        : ((std::uint64_t{1} << width_) - 1));
    }
    const int hi_bits = width_ - 64;
    return seen_lo != ~std::uint64_t{0} ||
           seen_hi != ((hi_bits == 64) ? ~std::uint64_t{0}
                                       : ((std::uint64_t{1} << hi_bits) - 1));
  }

  bool feasible() const { return shattered_ == 0; }
  long size() const { return top_; }
  std::uint64_t pushes() const { return probes_; }

  void clear() {
    while (top_ > 0) pop();
  }

 private:
  struct Slot {
    int cand = -1;
    std::vector<std::uint16_t> cnt;
    int missing = 0;
  };

  int pair_trace(int a, int b) const {
    if (table_ != nullptr && !table_->empty()) {
      return (*table_)[static_cast<std::size_t>(a) * cands_->size() +
                       static_cast<std::size_t>(b)];
    }
    const Subset inter = (*cands_)[static_cast<std::size_t>(a)] &
                         (*cands_)[static_cast<std::size_t>(b)];
    int idx = 0;
    const auto& pos = positions_[static_cast<std::size_t>(a)];
    for (int j = 0; j < k_; ++j) {
      if (inter.contains(pos[static_cast<std::size_t>(j)])) idx |= 1 << j;
    }
    return idx;
  }

  const std::vector<Subset>* cands_;
  int k_, width_;
  const std::vector<std::uint8_t>* table_;
  std::vector<std::vector<int>> positions_;
  std::vector<Slot> stack_;
  long top_ = 0;
  long shattered_ = 0;
  std::uint64_t probes_ = 0;
};

struct SearchContext {
  int n = 0, d = 0;
  std::vector<Subset> cands;  // branch order
  std::vector<std::uint8_t> pair_table;
  long fp_cap = 0;            // C(n,d): no feasible family is larger
};

inline std::vector<Subset> candidate_list(int n, int d, std::uint64_t seed) {
  std::vector<Subset> cands;
  for_each_k_subset(GroundSet(n), d + 1, [&](Subset s) { cands.push_back(s); });
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = cands.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(cands[i - 1], cands[j]);
    }
  }
  return cands;
}

inline std::vector<Subset> chosen_to_members(const SearchContext& ctx,
                                             const std::vector<int>& chosen) {
  std::vector<Subset> mem;
  mem.reserve(chosen.size());
  for (int c : chosen) mem.push_back(ctx.cands[static_cast<std::size_t>(c)]);
  std::sort(mem.begin(), mem.end(), CanonicalLess{});
  return mem;
}

// Sanity tripwire: every incumbent must satisfy |F| <= |shadow_d(F)|.
inline void check_incumbent(const SearchContext& ctx, const std::vector<int>& chosen) {
  SetSystem fam(GroundSet(ctx.n), chosen_to_members(ctx, chosen));
  if (Int(fam.size()) > shadow(fam, ctx.d).size()) {
    throw std::logic_error("incumbent family larger than its shadow");
  }
}

struct SubOutcome {
  long best = 0;             // best size found in this subtree (0 = none better than seed)
  std::vector<int> chosen;   // candidate indices achieving it
  std::uint64_t nodes = 0;
  bool completed = true;
};

// Exhausts the subtree where `first` is the lowest-index chosen candidate.
// At each node the candidates individually addable to the current family are
// filtered (extensions can only use those, since infeasibility is monotone
// under adding members), giving the bound |F| + |addable|. The incumbent is
// local to the subproblem, so the outcome (including node count) does not
// depend on scheduling.
class ExactWorker {
 public:
  ExactWorker(const SearchContext& ctx, long seed_best, std::uint64_t node_cap)
      : ctx_(ctx),
        tracker_(&ctx.cands, ctx.d, &ctx.pair_table),
        best_(seed_best),
        cap_(node_cap) {}

  // Families whose two lowest-index members are cands[0] and cands[second].
  // Every relabeling of [n] preserves feasibility, so some relabeling of any
  // nonempty family contains cands[0]; anchoring it loses no optima.
  SubOutcome run_pair(int second) {
    out_ = SubOutcome{};
    out_.best = best_;
    chosen_.clear();
    ++out_.nodes;
    tracker_.push(0);  // a single member is never shattered
    chosen_.push_back(0);
    note_incumbent();
    const bool ok = tracker_.push(second);
    chosen_.push_back(second);
    if (ok) {
      note_incumbent();
      rec(second + 1);
    }
    chosen_.pop_back();
    tracker_.pop();
    chosen_.pop_back();
    tracker_.pop();
    out_.completed = !bail_;
    return out_;
  }

 private:
  void note_incumbent() {
    const long cur = static_cast<long>(chosen_.size());
    if (cur > out_.best) {
      out_.best = cur;
      out_.chosen = chosen_;
      check_incumbent(ctx_, chosen_);
    }
  }

  void rec(int from) {
    if (bail_) return;
    if (++out_.nodes > cap_) {
      bail_ = true;
      return;
    }
    if (out_.best >= ctx_.fp_cap) return;
    const long m = static_cast<long>(ctx_.cands.size());
    const long cur = static_cast<long>(chosen_.size());
    if (cur + (m - from) <= out_.best) return;
    std::vector<int> addable;
    for (int c = from; c < static_cast<int>(m); ++c) {
      if (tracker_.can_add(c)) addable.push_back(c);
    }
    if (cur + static_cast<long>(addable.size()) <= out_.best) return;
    for (std::size_t p = 0; p < addable.size(); ++p) {
      if (bail_) return;
      if (cur + static_cast<long>(addable.size() - p) <= out_.best) return;
      const int c = addable[p];
      tracker_.push(c);  // still feasible: the family is unchanged since filtering
      chosen_.push_back(c);
      note_incumbent();
      rec(c + 1);
      chosen_.pop_back();
      tracker_.pop();
    }
  }

  const SearchContext& ctx_;
  ShatterTracker tracker_;
  std::vector<int> chosen_;
  long best_;
  std::uint64_t cap_;
  SubOutcome out_;
  bool bail_ = false;
};

struct GreedyOutcome {
  std::vector<int> chosen;
  std::uint64_t pushes = 0;
  bool exhausted = false;
};

// Adds the feasible candidate whose inclusion leaves the most candidates
// individually addable; falls back to first-feasible once the push budget
// runs low.
inline GreedyOutcome greedy_build(const SearchContext& ctx, std::uint64_t budget) {
  const long m = static_cast<long>(ctx.cands.size());
  GreedyOutcome out;
  ShatterTracker tr(&ctx.cands, ctx.d, &ctx.pair_table);
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  while (true) {
    const bool cheap = tr.pushes() + static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m) >
                       budget;
    if (cheap) out.exhausted = true;
    int pick = -1;
    long pick_metric = -1;
    for (int c = 0; c < m; ++c) {
      if (taken[static_cast<std::size_t>(c)]) continue;
      const bool ok = tr.push(c);
      if (!ok) {
        tr.pop();
        continue;
      }
      if (cheap) {
        pick = c;
        tr.pop();
        break;
      }
      long metric = 0;
      for (int r = 0; r < m; ++r) {
        if (r == c || taken[static_cast<std::size_t>(r)]) continue;
        if (tr.can_add(r)) ++metric;
      }
      tr.pop();
      if (metric > pick_metric) {
        pick_metric = metric;
        pick = c;
      }
    }
    if (pick < 0) break;
    tr.push(pick);
    taken[static_cast<std::size_t>(pick)] = 1;
    out.chosen.push_back(pick);
  }
  std::sort(out.chosen.begin(), out.chosen.end());
  out.pushes = tr.pushes();
  return out;
}

// 1-out/2-in exchanges until no improvement or the push budget is spent.
inline GreedyOutcome local_improve(const SearchContext& ctx, std::vector<int> chosen,
                                   std::uint64_t budget, std::uint64_t spent) {
  const long m = static_cast<long>(ctx.cands.size());
  GreedyOutcome out;
  out.chosen = std::move(chosen);
  ShatterTracker tr(&ctx.cands, ctx.d, &ctx.pair_table);
  const auto over = [&] { return spent + tr.pushes() >= budget; };
  bool improved = true;
  while (improved && !out.exhausted) {
    improved = false;
    for (std::size_t oi = 0; oi < out.chosen.size() && !improved; ++oi) {
      if (over()) {
        out.exhausted = true;
        break;
      }
      std::vector<int> base = out.chosen;
      base.erase(base.begin() + static_cast<std::ptrdiff_t>(oi));
      tr.clear();
      for (int c : base) tr.push(c);  // subfamilies of feasible families stay feasible
      std::vector<char> in_base(static_cast<std::size_t>(m), 0);
      for (int c : base) in_base[static_cast<std::size_t>(c)] = 1;
      for (int a = 0; a < m && !improved; ++a) {
        if (in_base[static_cast<std::size_t>(a)]) continue;
        if (over()) {
          out.exhausted = true;
          break;
        }
        if (!tr.push(a)) {
          tr.pop();
          continue;
        }
        for (int b = a + 1; b < m; ++b) {
          if (in_base[static_cast<std::size_t>(b)]) continue;
          if (over()) {
            out.exhausted = true;
            break;
          }
          if (tr.push(b)) {
            base.push_back(a);
            base.push_back(b);
            std::sort(base.begin(), base.end());
            out.chosen = base;
            improved = true;
            break;
          }
          tr.pop();
        }
        if (!improved) tr.pop();
      }
    }
  }
  out.pushes = spent + tr.pushes();
  return out;
}

}  // namespace detail

// Largest (d+1)-uniform family on [n] with VC-dimension at most d. Exact
// mode runs branch-and-bound over the candidates in mask order, split into
// one subproblem per lowest chosen candidate; subproblems share nothing, so
// results and node counts do not depend on the thread count. The node
// budget is divided evenly across subproblems. Greedy and local modes
// return lower bounds only.
inline SearchResult max_family_search(int n, int d, const SearchOptions& opts = {}) {
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  if (d > 6) throw std::invalid_argument("search supports d <= 6");
  GroundSet g(n);
  if (opts.mode == SearchMode::exact && (n > 12 || d > 3)) {
    throw std::invalid_argument("exact search is limited to n <= 12, d <= 3");
  }
  if (binom(n, d + 1) > 200000) {
    throw std::invalid_argument("candidate space too large for search");
  }
  const auto t0 = std::chrono::steady_clock::now();

  detail::SearchContext ctx;
  ctx.n = n;
  ctx.d = d;
  ctx.cands = detail::candidate_list(n, d, opts.seed);
  ctx.pair_table = detail::ShatterTracker::build_pair_table(ctx.cands, d);
  const Int cap = binom(n, d);
  ctx.fp_cap = cap.convert_to<long>();
  const long m = static_cast<long>(ctx.cands.size());

  SearchResult res{n, d, opts.mode, SetSystem::empty(g), 0, false, 0, 0.0};
  auto finish = [&](std::vector<Subset> members, bool proved, std::uint64_t nodes) {
    SetSystem fam(g, std::move(members));
    if (!fam.members.empty() && !vc_le_uniform(fam, d)) {
      throw std::logic_error("search produced a family above the VC bound");
    }
    res.family = std::move(fam);
    res.best_size = res.family.size();
    res.proved_optimal = proved;
    res.nodes = nodes;
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return res;
  };

  if (m == 0) return finish({}, true, 0);

  if (opts.mode == SearchMode::greedy || opts.mode == SearchMode::local) {
    detail::GreedyOutcome out = detail::greedy_build(ctx, opts.node_budget);
    if (opts.mode == SearchMode::local) {
      out = detail::local_improve(ctx, std::move(out.chosen), opts.node_budget, out.pushes);
    }
    return finish(detail::chosen_to_members(ctx, out.chosen), false, out.pushes);
  }

  // Construction and greedy seeds; all feasible wherever defined. The star
  // is nonempty whenever any candidate exists, so a lone anchored member
  // never needs separate consideration.
  long seed_best = 0;
  std::vector<Subset> seed_members;
  {
    SetSystem s = star(n, d);
    if (vc_le_uniform(s, d)) {
      seed_best = s.size();
      seed_members = s.members;
    }
  }
  if (n == 2 * d + 1) {
    SetSystem f = full_family(n, d);
    if (vc_le_uniform(f, d) && f.size() > seed_best) {
      seed_best = f.size();
      seed_members = f.members;
    }
  }
  std::uint64_t seed_nodes = 0;
  if (seed_best < ctx.fp_cap) {
    const std::uint64_t greedy_budget = std::min<std::uint64_t>(opts.node_budget / 10, 2'000'000);
    detail::GreedyOutcome g = detail::greedy_build(ctx, greedy_budget);
    seed_nodes = g.pushes;
    if (static_cast<long>(g.chosen.size()) > seed_best) {
      seed_best = static_cast<long>(g.chosen.size());
      seed_members = detail::chosen_to_members(ctx, g.chosen);
    }
  }
  if (seed_best >= ctx.fp_cap) {
    // The shadow certificate bound already proves optimality.
    return finish(std::move(seed_members), true, seed_nodes);
  }

  const long subproblems = m - 1;
  if (subproblems == 0) {
    // Only the anchored singleton exists, and the star already covers it.
    std::sort(seed_members.begin(), seed_members.end(), CanonicalLess{});
    return finish(std::move(seed_members), true, seed_nodes);
  }
  const std::uint64_t per_cap =
      std::max<std::uint64_t>(1, opts.node_budget / static_cast<std::uint64_t>(subproblems));
  std::vector<detail::SubOutcome> outcomes(static_cast<std::size_t>(subproblems));
  parallel_for_indexed(static_cast<std::size_t>(subproblems), opts.threads, [&](std::size_t i) {
    detail::ExactWorker worker(ctx, seed_best, per_cap);
    outcomes[i] = worker.run_pair(static_cast<int>(i) + 1);
  });

  long best = seed_best;
  std::vector<Subset> best_members = seed_members;
  std::uint64_t nodes = seed_nodes;
  bool completed = true;
  for (const auto& out : outcomes) {
    nodes += out.nodes;
    completed = completed && out.completed;
    if (out.chosen.empty()) continue;
    std::vector<Subset> mem = detail::chosen_to_members(ctx, out.chosen);
    const long sz = static_cast<long>(mem.size());
    if (sz > best) {
      best = sz;
      best_members = std::move(mem);
    } else if (sz == best && !best_members.empty() &&
               std::lexicographical_compare(mem.begin(), mem.end(), best_members.begin(),
                                            best_members.end(), MaskLess{})) {
      best_members = std::move(mem);
    }
  }
  std::sort(best_members.begin(), best_members.end(), CanonicalLess{});
  return finish(std::move(best_members), completed, nodes);
}

}  // namespace vcshadow
