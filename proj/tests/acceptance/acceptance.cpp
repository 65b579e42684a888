// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
// Usage: acceptance PATH_TO_CLI

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <unistd.h>

#include "kp/error.hpp"
#include "kp/flocks.hpp"
#include "kp/serialize.hpp"

using namespace kp;

namespace {

const FieldSpec Q = FieldSpec::rationals();

// Collects the first failed condition of a criterion.
struct Check {
  std::string failure;
  void require(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
  bool ok() const { return failure.empty(); }
};

Algebra hamilton() { return Algebra::quaternion(Q, Q.from_int(-1), Q.from_int(-1)); }

const ProjSubspace& kappa1() {
  static const ProjSubspace k = [] {
    Rng rng(1001);
    return clifford_hfd_plane(hamilton(), Side::Left, rng, 20);
  }();
  return k;
}

const HfdDescriptor& two_plane() {
  static const HfdDescriptor d = [] {
    Rng rng(1002);
    return two_plane_descriptor(kappa1(), rng, 3);
  }();
  return d;
}

bool lines_meet(const ProjSubspace& a, const ProjSubspace& b) { return !meet(a, b).is_empty(); }

Vec point3(const FieldSpec& f, Rng& rng) {
  Vec v;
  do v = random_vector(f, 4, rng); while (is_zero(v));
  return v;
}

void klein_exactness(Check& c) {
  const auto f2 = FieldSpec::prime(2);
  std::vector<ProjSubspace> lines;
  SubspaceStream ls(f2, 3, 1);
  while (auto l = ls.next()) lines.push_back(*l);
  c.require(lines.size() == 35, "PG(3,2) does not have 35 lines");
  std::vector<ProjSubspace> images;
  for (const auto& l : lines) {
    images.push_back(lambda_point(l));
    c.require(on_quadric(images.back().row(0)), "image off H5");
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) c.require(!(images[i] == images[j]), "lambda not injective");
  std::size_t quadric_points = 0;
  SubspaceStream ps(f2, 5, 0);
  while (auto p = ps.next()) quadric_points += on_quadric(p->row(0));
  c.require(quadric_points == 35, "H5 over GF(2) does not have 35 points");
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j, ++pairs)
      c.require(lines_meet(lines[i], lines[j]) == klein_b(lambda(lines[i]), lambda(lines[j])).is_zero(),
                "GF(2) incidence mismatch");
  c.require(pairs == 595, "pair count");

  Rng rng(1003);
  std::size_t meeting = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_line3(Q, rng);
    ProjSubspace b = random_line3(Q, rng);
    if (i % 2 == 0) b = ProjSubspace::from_rows(Q, 3, Mat{random_vector_in(a, rng), point3(Q, rng)});
    if (b.dim() != 1) continue;
    const bool m = lines_meet(a, b);
    meeting += m;
    c.require(m == klein_b(lambda(a), lambda(b)).is_zero(), "rational incidence mismatch");
  }
  c.require(meeting >= 400, "too few meeting pairs sampled");
}

void finite_nonexistence(Check& c) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto f = FieldSpec::prime(p);
    std::uint64_t planes = 0, external = 0, lines = 0, zero = 0;
    SubspaceStream ps(f, 5, 2);
    while (auto e = ps.next()) {
      ++planes;
      external += is_external_plane(*e);
    }
    SubspaceStream ls(f, 5, 1);
    while (auto l = ls.next()) {
      ++lines;
      zero += is_zero_secant(*l);
    }
    const std::string tag = "GF(" + std::to_string(p) + "): ";
    c.require(planes == (p == 2 ? 1395u : 33880u), tag + "plane count");
    c.require(lines == gaussian_binomial(6, 2, p), tag + "line count");
    c.require(external == 0, tag + "external plane found");
    c.require(zero > 0, tag + "no 0-secant");
  }
}

void clifford_over_q(Check& c) {
  const auto h = hamilton();
  c.require(is_division(h), "(-1,-1) not division");
  const auto& k = kappa1();
  const auto verdict = section_isotropy(k);
  c.require(verdict.is_anisotropic() && verdict.proof() == ProofTag::HasseMinkowski, "no Hasse-Minkowski proof");
  Rng rng(1004);
  for (int i = 0; i < 200; ++i)
    c.require(k.contains(gamma(clifford_class(h, Side::Left, random_line3(Q, rng)))), "class image off kappa1");
  const auto cl = classify(constant_descriptor(k));
  c.require(cl.kind == HfdCase::PlaneOfLines && cl.dimension == 2, "constant descriptor misclassified");
}

void two_plane_construction(Check& c) {
  const auto& k1 = kappa1();
  Rng rng(1005);
  const auto second = second_external_plane(k1, rng);
  c.require(is_external_plane(second.plane, &second.certificate), "kappa2 not external");
  c.require(meet(k1, second.plane).dim() == 1, "kappa1 and kappa2 do not meet in a line");

  const auto& d = two_plane();
  c.require(d.exceptions.size() == 3, "exception count");
  try {
    validate(d);
  } catch (const Error& e) {
    c.require(false, e.what());
  }
  for (int i = 0; i < 1000; ++i) {
    const auto r = verify_hfd_at(d, random_quadric_point(Q, rng));
    c.require(r.pass && r.members == 1, "hfd check: " + r.detail);
  }
  const auto cl = classify(d);
  c.require(cl.kind == HfdCase::CollinearVertices, "case");
  c.require(cl.k.size() == 2, "|K| != 2");
  c.require(cl.v == meet(d.planes[0], d.planes[1]), "V != kappa1 cap kappa2");
  c.require(cl.dimension == 3, "dimension != 3");
  c.require(!is_clifford(d), "two-plane descriptor reported Clifford");
}

void classification_invariants(Check& c) {
  const auto constant = constant_descriptor(kappa1());
  Rng rng(1006);
  for (const HfdDescriptor* d : {&constant, &two_plane()}) {
    const auto cl = classify(*d);
    for (std::size_t i : cl.attained) c.require(is_external_plane(d->planes[i], d->certificate(i)), "attained plane meets H5");
    ProjSubspace v = cl.k.front();
    for (const auto& k : cl.k) v = meet(v, k);
    c.require(v == cl.v, "V != intersection of K");
    if (cl.kind == HfdCase::CollinearVertices) c.require(v == d->d, "V != D");

    for (int i = 0; i < 100; ++i) {
      const Vec v1 = i % 2 ? d->d.row(0) : d->d.row(0) + Q.from_int(i) * d->d.row(1);
      const Vec v2 = d->d.row(1) + Q.from_int(i + 1) * d->d.row(0);
      const auto x1 = line_in_tangent_hyperplane(*d, polar(ProjSubspace::point(tangent_through_point_avoiding(v1, d->d, rng))));
      const auto x2 = line_in_tangent_hyperplane(*d, polar(ProjSubspace::point(tangent_through_point_avoiding(v2, d->d, rng))));
      // Pencil closure: the member through v lies in f(v) and passes through v.
      c.require(x1.contains(v1) && f_of(*d, v1).contains(x1), "pencil closure at v1");
      c.require(x2.contains(v2) && f_of(*d, v2).contains(x2), "pencil closure at v2");
      const auto p1 = hfd_membership(*d, x1), p2 = hfd_membership(*d, x2);
      c.require(p1 && p2, "sampled line not a member");
      if (!p1 || !p2) continue;
      const auto common = join(ProjSubspace::point(p1->vertex), ProjSubspace::point(p2->vertex));
      c.require(common == d->d, "v1 v2 is not D");
      c.require(p1->carrier.contains(common) && p2->carrier.contains(common), "v1 v2 outside a carrier");
      c.require(hfd_membership(*d, common).has_value(), "v1 v2 not a member");
    }
  }
}

void parallelism_semantics(Check& c) {
  const auto& d = two_plane();
  Rng rng(1007);
  std::size_t pairs = 0;
  for (int i = 0; i < 500; ++i) {
    const auto l = random_line3(Q, rng);
    const auto cls = parallelism_from_hfd(d, l);
    c.require(spread_contains(cls, l), "line outside its class");
    if (i % 10 == 0) {
      const auto other = line_through_point(cls, point3(Q, rng));
      c.require(std::get<SecantSpread>(parallelism_from_hfd(d, other)).g == std::get<SecantSpread>(cls).g,
                "same-class pair split");
      ++pairs;
    }
  }
  c.require(pairs == 50, "pair count");
  const auto h = hamilton();
  const auto coset = coset_spread(h, intermediate_field(h, h.basis(1)));
  const auto part = verify_partition(coset, 500, 1008);
  c.require(part.ok(), part.ok() ? "" : part.failures.front());
}

void flocks(Check& c) {
  const auto& k1 = kappa1();
  const Vec p = k1.row(0) + k1.row(2);
  c.require(!on_quadric(p), "pole on H5");
  const LinearFlock fl(p, k1);
  const auto r = verify_flock(fl, 300, 1009, 5);
  c.require(r.ok() && r.checked == 300, r.ok() ? "flock count" : r.failures.front());
  const auto dc = check_distinguished_class(two_plane(), 10, 100, 1010);
  c.require(dc.ok() && dc.checked == 100, dc.ok() ? "distinguished count" : dc.failures.front());
}

void characteristic_two(Check& c) {
  const auto F = FieldSpec::f2st();
  const auto h = Algebra::tower();
  Rng rng(1011);
  for (int i = 0; i < 200; ++i) {
    const Vec x = random_vector(F, 4, rng, 2);
    const Vec sq = h.mul(x, x);
    c.require(sq[1].is_zero() && sq[2].is_zero() && sq[3].is_zero(), "x^2 not central");
  }
  const auto kappa = clifford_hfd_plane(h, Side::Left, rng, 5);
  c.require(plane_polar_type(kappa) == PolarType::SelfPolar, "Clifford plane not self-polar");
  for (int i = 0; i < 20; ++i)
    c.require(is_nucleus_line(gamma(clifford_class(h, Side::Left, random_line3(F, rng, 2)))), "member not a nucleus line");
  int fields = 0;
  while (fields < 20) {
    const Vec x = random_vector(F, 4, rng, 2);
    if (x[1].is_zero() && x[2].is_zero() && x[3].is_zero()) continue;
    const auto l = intermediate_field(h, x);
    const auto g = gamma(coset_spread(h, l));
    c.require(!is_separable_quadratic(l), "separable subfield of the tower");
    c.require(galois_criterion_check(g, l), "Galois criterion disagrees");
    ++fields;
  }
}

void characteristic_not_two(Check& c) {
  const auto& k1 = kappa1();
  Rng rng(1012);
  auto skew = [&](const ProjSubspace& s) { return meet(s, polar(s)).is_empty(); };
  for (int i = 0; i < 50; ++i) {
    const auto second = second_external_plane(k1, rng);
    const auto& e = second.plane;
    c.require(plane_polar_type(e) == PolarType::Skew && skew(e), "plane meets its polar");
    const AnisotropyCertificate pc{second.certificate.centre,
                                   polar(ProjSubspace::from_rows(Q, 5, second.certificate.source_rows)).rows()};
    c.require(is_external_plane(polar(e), &pc), "polar plane not external");
    Mat rows{random_vector_in(e, rng), random_vector_in(e, rng)};
    const auto g = ProjSubspace::from_rows(Q, 5, rows);
    if (g.dim() != 1) continue;
    c.require(is_zero_secant(g) && skew(g), "0-secant meets its polar");
  }
  c.require(plane_polar_type(k1) == PolarType::Skew && is_external_plane(polar(k1)), "kappa1");
}

int run(const std::string& cmd, std::string& out) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return -1;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void determinism(Check& c, const std::string& cli) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / ("kp_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto desc = (dir / "two.json").string();
  std::string ignored;
  c.require(run(cli + " construct-hfd --auto-second-plane --seed 11 --save-descriptor " + desc, ignored) == 0,
            "construct-hfd failed");
  for (const std::string args : {"verify --in " + desc + " --samples 300 --seed 42 --json",
                                 std::string("demo clifford --field Q --seed 9 --json"),
                                 std::string("demo clifford --field f2st --samples 10 --seed 9 --json")}) {
    std::string a, b;
    const int ca = run(cli + " " + args, a), cb = run(cli + " " + args, b);
    c.require(ca == 0 && cb == 0, "nonzero exit: " + args);
    c.require(!a.empty() && a == b, "reports differ: " + args);
  }
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance PATH_TO_CLI\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"Klein correspondence exactness over GF(2) and Q", klein_exactness},
      {"no external planes over GF(2), GF(3); 0-secants exist", finite_nonexistence},
      {"Clifford plane of (-1,-1) over Q is a plane of lines", clifford_over_q},
      {"two-plane hfd line set over Q", two_plane_construction},
      {"classification invariants and pencil pairs", classification_invariants},
      {"parallelism from the two-plane descriptor", parallelism_semantics},
      {"linear flocks and the distinguished class", flocks},
      {"characteristic 2 tower: nucleus lines and Galois criterion", characteristic_two},
      {"characteristic 0: external planes skew to their polars", characteristic_not_two},
      {"byte-identical CLI reports", [&](Check& c) { determinism(c, cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !c.ok();
    std::printf("%s %zu %s (%.2fs)%s%s\n", c.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                c.ok() ? "" : ": ", c.failure.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
