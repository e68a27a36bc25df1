#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "support.hpp"
#include "twnorm/linalg.hpp"
#include "twnorm/oracle.hpp"

using namespace twnorm;
using support::kind_of;

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Partition by acting with every group element, compared with the table.
void check_partition(const ClassTable& t, const std::vector<Mat>& elems, auto act) {
  std::map<std::uint64_t, std::size_t> pos;
  for (std::size_t i = 0; i < elems.size(); ++i) pos[encode(elems[i])] = i;
  UnionFind uf(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const Mat& g : elems) uf.unite(i, pos.at(encode(act(g, elems[i]))));
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < elems.size(); ++i) roots.insert(uf.find(i));
  CHECK(roots.size() == t.classes.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if ((uf.find(i) == uf.find(j)) != (t.class_of(elems[i]) == t.class_of(elems[j]))) {
        FAIL("partition mismatch");
        return;
      }
}

}  // namespace

TEST_CASE("encode and decode") {
  const Field& f9 = Field::quadratic(3);
  Rng rng(50);
  for (int k = 0; k < 100; ++k) {
    Mat a = random_mat(f9, 2, 3, rng);
    CHECK(decode(f9, 2, 3, encode(a)) == a);
  }
  const Field& f3 = Field::prime(3);
  CHECK(encode(Mat::from_ints(f3, {{0, 1}})) < encode(Mat::from_ints(f3, {{1, 0}})));
}

TEST_CASE("enumerate_group counts") {
  const Field& f3 = Field::prime(3);
  auto gl2 = enumerate_group(f3, GroupTag::GL, 2);
  CHECK(gl2.size() == 48);
  for (std::size_t i = 1; i < gl2.size(); ++i) CHECK(encode(gl2[i - 1]) < encode(gl2[i]));
  CHECK(enumerate_group(f3, GroupTag::GL, 3).size() == 11232);
  CHECK(enumerate_group(Field::quadratic(3), GroupTag::GL, 2).size() == (81 - 1) * (81 - 9));

  // SO_3(F_3) against an independent scan of all 3x3 matrices.
  std::size_t scan = 0;
  for (const Mat& a : support::all_matrices(f3, 3, 3))
    if (so_membership(a, 1).member) ++scan;
  auto so3 = enumerate_group(f3, GroupTag::SO, 1);
  CHECK(so3.size() == scan);
  CHECK(so3.size() == group_order(GroupTag::SO, 1, 3));
  CHECK(enumerate_group(Field::prime(5), GroupTag::SO, 1).size() == 120);
  CHECK(group_order(GroupTag::SO, 2, 3) == 51840);

  CHECK(kind_of([] { enumerate_group(Field::prime(5), GroupTag::GL, 4); }) == ErrorKind::BudgetExceeded);
  CHECK(kind_of([] { enumerate_group(Field::prime(3), GroupTag::GL, 2, 10); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("eps_class_table for n = 1") {
  // eps(g) = g^{-1}, so y -> g y g: orbits are square classes.
  for (std::int64_t p : {3, 5, 7}) {
    const Field& f = Field::prime(p);
    ClassTable t = eps_class_table(f, 1, 0);
    REQUIRE(t.classes.size() == 2);
    CHECK(t.classes[0].rep.is_identity());
    CHECK(t.classes[0].size == static_cast<std::uint64_t>((p - 1) / 2));
    for (const Scalar& y : f.nonzero_elements())
      CHECK((t.class_of(Mat::diag(f, {y})) == 0) == is_square(y));
  }
}

TEST_CASE("eps_class_table partitions GL_2(F_3)") {
  const Field& f3 = Field::prime(3);
  ClassTable t = eps_class_table(f3, 2, 1);
  auto elems = enumerate_group(f3, GroupTag::GL, 2);
  std::uint64_t total = 0;
  for (const auto& c : t.classes) total += c.size;
  CHECK(total == 48);
  FormContext ctx = form_context(f3, 2);
  check_partition(t, elems, [&](const Mat& g, const Mat& y) { return g * y * inverse(eps(g, ctx)); });
  for (const auto& c : t.classes) CHECK(t.class_of(c.rep) == static_cast<std::size_t>(&c - t.classes.data()));

  // Class of I is closed under inversion; (Y^{-1}X, eps(Y)) keeps eps(Y) in a solvable class.
  std::size_t id = t.class_of(Mat::identity(f3, 2));
  for (const Mat& y : elems)
    if (t.class_of(y) == id) CHECK(t.class_of(inverse(y)) == id);
  for (const auto& c : t.classes)
    if (c.solvable) CHECK(t.classes[t.class_of(eps(c.rep, ctx))].solvable);
}

TEST_CASE("eps_class_table sizes for GL_3(F_3)") {
  const Field& f3 = Field::prime(3);
  ClassTable t = eps_class_table(f3, 3, 1);
  std::uint64_t total = 0;
  for (const auto& c : t.classes) total += c.size;
  CHECK(total == 11232);
  for (const auto& c : t.classes) {
    // the representative is least in its class
    for (const Mat& y : enumerate_group(f3, GroupTag::GL, 3))
      if (t.class_of(y) == t.class_of(c.rep)) {
        CHECK(encode(c.rep) <= encode(y));
        break;
      }
  }
}

TEST_CASE("so_class_table") {
  for (std::int64_t p : {3, 5}) {
    const Field& f = Field::prime(p);
    ClassTable t = so_class_table(f, 1);
    CHECK(t.classes.size() == (p == 3 ? 5u : 7u)); // S_4 and S_5
    CHECK(t.classes[t.class_of(Mat::identity(f, 3))].size == 1);
    std::uint64_t total = 0;
    for (const auto& c : t.classes) {
      total += c.size;
      CHECK(eigenspace_dim(c.rep, f.one()) % 2 == 1);
    }
    CHECK(total == t.group_order);
    auto elems = enumerate_group(f, GroupTag::SO, 1);
    check_partition(t, elems, [](const Mat& g, const Mat& h) { return g * h * inverse(g); });
  }
}

TEST_CASE("norm_fiber_table at (3,1,3)") {
  const Field& f3 = Field::prime(3);
  FiberReport fr = norm_fiber_table(f3, 3, 1);
  CHECK(fr.exhaustive_x);
  std::set<std::size_t> listed;
  for (const auto& e : fr.mapping) {
    CHECK(listed.insert(e.twisted_class).second);
    CHECK(fr.twisted.classes[e.twisted_class].solvable);
    CHECK(!e.norm_classes.empty());
  }
  std::size_t solvable = 0;
  for (const auto& c : fr.twisted.classes) solvable += c.solvable ? 1 : 0;
  CHECK(listed.size() == solvable);

  std::set<std::size_t> reached;
  for (const auto& e : fr.mapping)
    if (fr.twisted.classes[e.twisted_class].semisimple) reached.insert(e.norm_classes.begin(), e.norm_classes.end());
  for (std::size_t i = 0; i < fr.so.classes.size(); ++i)
    if (fr.so.classes[i].semisimple) CHECK(reached.count(i) == 1);

  for (const auto& e : fr.mapping) {
    const ClassInfo& c = fr.twisted.classes[e.twisted_class];
    if (c.semisimple && c.regular) {
      REQUIRE(e.norm_classes.size() == 1);
      CHECK(fr.so.classes[e.norm_classes[0]].semisimple);
      CHECK(fr.so.classes[e.norm_classes[0]].regular);
    }
  }
}

TEST_CASE("norm fibers do not depend on the class representative") {
  const Field& f3 = Field::prime(3);
  FiberReport fr = norm_fiber_table(f3, 2, 1);
  FormContext ctx = form_context(f3, 2);
  auto xs = support::all_matrices(f3, 2, 3);
  Rng rng(51);
  for (const auto& e : fr.mapping) {
    Mat g = random_invertible(f3, 2, rng);
    Mat y = g * fr.twisted.classes[e.twisted_class].rep * inverse(eps(g, ctx));
    Mat s = y + eps_tilde(y, ctx), yi = inverse(y);
    std::set<std::size_t> classes;
    for (const Mat& x : xs)
      if (x * x_prime(x, 2, 1) == s) classes.insert(fr.so.class_of(Mat::identity(f3, 3) - x_prime(x, 2, 1) * yi * x));
    CHECK(std::vector<std::size_t>(classes.begin(), classes.end()) == e.norm_classes);
  }
}

TEST_CASE("right_transporter") {
  const Field& f3 = Field::prime(3);
  TransporterReport zero = right_transporter(Mat(f3, 2, 3), 1);
  CHECK(zero.members.size() == zero.group_order);
  CHECK_FALSE(zero.proper);
  TransporterReport full = right_transporter(Mat::identity(f3, 3), 1);
  CHECK(full.members.size() == 24);
  TransporterReport line = right_transporter(Mat::from_ints(f3, {{1, 0, 0}}), 1);
  CHECK(line.rowspace_intermediate);
  CHECK(line.proper);
  CHECK(line.members.size() < 24);
  // Every member maps the row space into itself, independently rechecked.
  for (const Mat& h : line.members) CHECK(rank(vstack({Mat::from_ints(f3, {{1, 0, 0}}), Mat::from_ints(f3, {{1, 0, 0}}) * h})) == 1);
}

TEST_CASE("run_suite") {
  CHECK(kind_of([] { run_suite("unknown"); }) == ErrorKind::UnknownSuite);
  SuiteReport p = run_suite("regular_fibers");
  CHECK(p.passed());
  SuiteReport id = run_suite("identities");
  CHECK(id.passed());
  for (const auto& c : id.claims) CHECK(c.checked > 0);
  SuiteConfig cfg;
  cfg.fields = {"F7"};
  CHECK(run_suite("identities", cfg).passed());
  CHECK(run_suite("fixed_space").passed());
}
