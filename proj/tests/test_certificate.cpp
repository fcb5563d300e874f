#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "vcshadow/certificate.hpp"
#include "vcshadow/constructions.hpp"
#include "vcshadow/family_gen.hpp"

using namespace vcshadow;

namespace {

SetSystem complete_uniform(int n, int k) {
  std::vector<Subset> mem;
  for_each_k_subset(GroundSet(n), k, [&](Subset s) { mem.push_back(s); });
  return SetSystem(GroundSet(n), std::move(mem));
}

Int product_eval(const PolyLabel& label, int d, Subset a) {
  switch (label.kind) {
    case 'f':
    case 'y': {
      Int first = 1;
      for (int e : label.aux.elements()) first *= (a.contains(e) ? 1 : 0);
      for (int e : label.main.minus(label.aux).elements()) first *= (a.contains(e) ? 0 : -1);
      Int second = 1;
      for (int e : label.main.elements()) second *= (a.contains(e) ? 1 : 0);
      return first - second;
    }
    case 'h': {
      Int lead = a.size() - d - 1;
      for (int e : label.main.elements()) lead *= (a.contains(e) ? 1 : 0);
      return lead;
    }
    case 'g':
      return label.main.subset_of(a) ? 1 : 0;
  }
  return 0;
}

}  // namespace

TEST_CASE("find_witnesses on intersecting families picks the empty set") {
  SetSystem c53 = complete_uniform(5, 3);
  WitnessAssignment w = find_witnesses(c53, 2);
  for (Subset b : w.sets) CHECK(b == Subset{});
  validate_witnesses(c53, w);

  SetSystem s62 = star(6, 2);
  for (Subset b : find_witnesses(s62, 2).sets) CHECK(b == Subset{});
}

TEST_CASE("find_witnesses reports the shattered member") {
  SetSystem c63 = complete_uniform(6, 3);
  try {
    find_witnesses(c63, 2);
    FAIL("expected witness_error");
  } catch (const witness_error& e) {
    CHECK(e.member_index == 0);
    CHECK(e.shattered_member == Subset::of({1, 2, 3}));
  }
}

TEST_CASE("witness validation rejects traces and non-subsets") {
  SetSystem s62 = star(6, 2);
  WitnessAssignment w = find_witnesses(s62, 2);
  WitnessAssignment bad = w;
  bad.sets[0] = Subset::of({1});  // {1} is a trace of every member pair on members
  CHECK_THROWS_AS(validate_witnesses(s62, bad), std::invalid_argument);
  bad.sets[0] = Subset::of({5, 6});
  CHECK_THROWS_AS(validate_witnesses(s62, bad), std::invalid_argument);
  bad.sets.pop_back();
  CHECK_THROWS_AS(validate_witnesses(s62, bad), std::invalid_argument);
}

TEST_CASE("certificate for star(6,2)") {
  ShadowCertificate cert = triangular_certificate(star(6, 2), 2);
  CHECK(cert.pass());
  CHECK(cert.family_size == 10);
  CHECK(cert.shadow_size == 15);
  CHECK(cert.binom_nd == 15);
  CHECK(cert.row_count == 17);  // 10 members + 7 small sets + 0 missing d-sets
  CHECK(cert.rank == 17);
  CHECK(cert.triangular);
  CHECK(rank_of(cert.matrix) == 17);
  CHECK(first_pattern_violation(cert.matrix.entries) == std::pair<long, long>{-1, -1});
}

TEST_CASE("certificate for the complete family at n = 2d+1 is tight") {
  ShadowCertificate cert = triangular_certificate(full_family(5, 2), 2);
  CHECK(cert.pass());
  CHECK(cert.family_size == 10);
  CHECK(cert.shadow_size == 10);
  CHECK(cert.binom_nd == 10);
  CHECK(cert.family_size == cert.binom_nd);
  CHECK(Int(cert.row_count) == cert.ambient_dim);
}

TEST_CASE("certificate for the empty family is vacuous") {
  ShadowCertificate cert = triangular_certificate(SetSystem::empty(GroundSet(4)), 2);
  CHECK(cert.pass());
  CHECK(cert.family_size == 0);
  CHECK(cert.shadow_size == 0);
  CHECK(cert.row_count == 11);  // 5 small sets + 6 missing pairs
  CHECK(cert.rank == 11);
}

TEST_CASE("certificate rejects families above the bound") {
  CHECK_THROWS_AS(triangular_certificate(complete_uniform(6, 3), 2), witness_error);
  CHECK_THROWS_AS(triangular_certificate(hamming_ball(4, 2), 2), std::invalid_argument);
}

TEST_CASE("matrix entries equal product-form re-evaluation") {
  ShadowCertificate cert = triangular_certificate(star(5, 2), 2);
  for (long r = 0; r < cert.matrix.entries.rows(); ++r) {
    for (long c = 0; c < cert.matrix.entries.cols(); ++c) {
      const Int expect = product_eval(cert.matrix.row_labels[static_cast<std::size_t>(r)],
                                      cert.d, cert.matrix.col_labels[static_cast<std::size_t>(c)]);
      CHECK(cert.matrix.entries(r, c) == expect);
    }
  }
}

TEST_CASE("random VC-bounded families always certify") {
  Rng rng(301);
  for (int iter = 0; iter < 50; ++iter) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const int n = d + 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(10 - d - 1)));
    SetSystem fam = random_vc_bounded_family(n, d, rng, 0.3 + 0.4 * rng.unit());
    ShadowCertificate cert = triangular_certificate(fam, d);
    CHECK(cert.triangular);
    CHECK(cert.rank == cert.row_count);
    CHECK(cert.family_size <= cert.shadow_size);
    CHECK(cert.family_size <= cert.binom_nd);
    CHECK(Int(cert.row_count) <= cert.ambient_dim);
  }
}

TEST_CASE("certificate JSON is byte-stable and thread-independent") {
  SetSystem fam = star(6, 2);
  ShadowCertificate c1 = triangular_certificate(fam, 2, 1);
  ShadowCertificate c4 = triangular_certificate(fam, 2, 4);
  const std::string j1 = certificate_to_json(c1, "t").dump(2);
  const std::string j4 = certificate_to_json(c4, "t").dump(2);
  CHECK(j1 == j4);

  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed["family_size"] == "10");
  CHECK(parsed["shadow_size"] == "15");
  CHECK(parsed["rows"].size() == 17);
  CHECK(parsed["entries"].size() == 17);
  CHECK(parsed["entries"][0][0] == "-1");
}

TEST_CASE("triangular pattern checker") {
  IntMatrix m(2, 2);
  m(0, 0) = 1;
  m(1, 0) = 0;
  m(1, 1) = 2;
  m(0, 1) = 7;  // above the diagonal is unconstrained
  CHECK(triangular_pattern(m));
  m(1, 0) = 3;
  CHECK_FALSE(triangular_pattern(m));
  CHECK(first_pattern_violation(m) == std::pair<long, long>{1, 0});
  m(1, 0) = 0;
  m(1, 1) = 0;
  CHECK_FALSE(triangular_pattern(m));
}
