#include <doctest.h>

#include <optional>
#include <vector>

#include "necsim/network.hpp"
#include "necsim/subspace.hpp"
#include "oracles.hpp"

using namespace necsim;

TEST_CASE("min-cut pinned examples and exhaustive oracle") {
  for (int c = 1; c <= 6; ++c) CHECK(Topology::parallel(c).min_cut() == c);
  CHECK(Topology::butterfly().min_cut() == 2);
  CHECK(Topology::diamond().min_cut() == 2);
  // Single path of three edges.
  const Topology chain(4, {{0, 1}, {1, 2}, {2, 3}}, 0, 3);
  CHECK(chain.min_cut() == 1);
  for (const Topology& t :
       {Topology::parallel(3), Topology::butterfly(), Topology::diamond(), chain}) {
    CHECK(t.min_cut() == oracle::min_cut_exhaustive(t.nodes(), t.edges(),
                                                    t.source(), t.sink()));
  }
}

TEST_CASE("min_cut_edges forms a disconnecting set of min-cut size") {
  for (const Topology& t :
       {Topology::parallel(4), Topology::butterfly(), Topology::diamond()}) {
    const auto cut = t.min_cut_edges();
    CHECK(static_cast<int>(cut.size()) == t.min_cut());
    unsigned mask = 0;
    for (int e : cut) mask |= 1u << e;
    CHECK(!oracle::connects(t.nodes(), t.edges(), t.source(), t.sink(), mask));
  }
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(Topology(3, {{0, 1}, {1, 2}, {2, 0}}, 0, 2),
                  std::invalid_argument);  // cycle
  CHECK_THROWS_AS(Topology(2, {{0, 5}}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Topology(2, {}, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Topology::parallel(0), std::invalid_argument);
  CHECK_THROWS_AS(Topology::by_name("ring"), std::invalid_argument);
}

TEST_CASE("topology JSON roundtrip and names") {
  const Topology t = Topology::butterfly();
  const Topology back = Topology::from_json(t.to_json());
  CHECK(back.edges() == t.edges());
  CHECK(back.min_cut() == 2);
  CHECK(Topology::by_name("parallel:5").min_cut() == 5);
  CHECK(Topology::by_name("butterfly").edges().size() == 7);
}

TEST_CASE("identity coding on parallel edges: Y = X, Z empty, T_AB = I") {
  const Field f5(5);
  const Topology t = Topology::parallel(3);
  Rng rng(1);
  const NetworkCode code = sample_rlnc(t, f5, rng, SourceCoding::Identity);
  const Matrix x = random_matrix(f5, 3, 4, rng);
  const EdgeAssignment none{};
  const auto r = transmit(code, x, none, std::nullopt);
  CHECK(r.y == x);
  CHECK(r.z.rows() == 0);
  CHECK(r.transfer.t_ab == Matrix::identity(f5, 3));
}

TEST_CASE("overwriting one parallel edge substitutes that row") {
  const Field f3(3);
  const Topology t = Topology::parallel(3);
  Rng rng(2);
  const NetworkCode code = sample_rlnc(t, f3, rng, SourceCoding::Identity);
  const Matrix x = random_matrix(f3, 3, 4, rng);
  const Matrix jam = Matrix::from_rows(f3, {{1, 2, 0, 1}});
  EdgeAssignment a;
  a.write_only = {0};
  const auto r = transmit(code, x, a, jam);
  CHECK(r.y.row_vector(0) == jam.row_vector(0));
  CHECK(r.y.row_vector(1) == x.row_vector(1));
  CHECK(r.y.row_vector(2) == x.row_vector(2));
}

TEST_CASE("a read edge downstream of a jammed edge sees post-jam content") {
  // 0 --e0--> 1 --e1--> 2 --e2--> 3, jam e0, read e1; hand-traced oracle:
  // with identity-style unit local rows the read edge must carry the jam
  // row, not the source row.
  const Field f2(2);
  const Topology chain(4, {{0, 1}, {1, 2}, {2, 3}}, 0, 3);
  NetworkCode code{&chain, &f2, 1, {{1}, {1}, {1}}};
  const Matrix x = Matrix::from_rows(f2, {{1, 0, 1, 1}});
  const Matrix jam = Matrix::from_rows(f2, {{0, 1, 1, 0}});
  EdgeAssignment a;
  a.write_only = {0};
  a.read_only = {1};
  const auto r = transmit(code, x, a, jam);
  CHECK(r.z.row_vector(0) == jam.row_vector(0));
  CHECK(r.y.row_vector(0) == jam.row_vector(0));
}

TEST_CASE("a read-write edge observes its own pre-overwrite content") {
  const Field f2(2);
  const Topology t = Topology::parallel(2);
  Rng rng(3);
  const NetworkCode code = sample_rlnc(t, f2, rng, SourceCoding::Identity);
  const Matrix x = Matrix::from_rows(f2, {{1, 1, 0}, {0, 1, 1}});
  const Matrix jam = Matrix::from_rows(f2, {{1, 0, 0}});
  EdgeAssignment a;
  a.read_write = {1};
  const auto r = transmit(code, x, a, jam);
  CHECK(r.z.row_vector(0) == x.row_vector(1));  // observed before overwrite
  CHECK(r.y.row_vector(1) == jam.row_vector(0));
}

TEST_CASE("no-attack transmit matches the assembled transfer matrices") {
  const Field f4(2, 2);
  for (const Topology& t :
       {Topology::parallel(3), Topology::butterfly(), Topology::diamond()}) {
    Rng rng(10 + t.nodes());
    for (int trial = 0; trial < 20; ++trial) {
      const NetworkCode code = sample_rlnc(t, f4, rng);
      const Matrix x = random_matrix(f4, t.min_cut(), 5, rng);
      EdgeAssignment a;
      a.read_only = {0};
      const auto r = transmit(code, x, a, std::nullopt);
      CHECK(r.y == r.transfer.t_ab * x);
      CHECK(r.z == r.transfer.t_aj * x);
    }
  }
}

TEST_CASE("transmit is linear in X under no attack") {
  const Field f5(5);
  const Topology t = Topology::butterfly();
  Rng rng(44);
  const NetworkCode code = sample_rlnc(t, f5, rng);
  const EdgeAssignment none{};
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x1 = random_matrix(f5, 2, 4, rng);
    const Matrix x2 = random_matrix(f5, 2, 4, rng);
    const std::uint32_t a = f5.sample(rng), b = f5.sample(rng);
    const Matrix combo = x1.scaled(a) + x2.scaled(b);
    const auto y1 = transmit(code, x1, none, std::nullopt).y;
    const auto y2 = transmit(code, x2, none, std::nullopt).y;
    const auto yc = transmit(code, combo, none, std::nullopt).y;
    CHECK(yc == y1.scaled(a) + y2.scaled(b));
  }
}

TEST_CASE("rowspace(Y) lies inside rowspace(X) + rowspace(jam)") {
  const Field f2(2);
  const Topology t = Topology::butterfly();
  Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const NetworkCode code = sample_rlnc(t, f2, rng);
    const Matrix x = random_matrix(f2, 2, 5, rng);
    const Matrix jam = random_matrix(f2, 1, 5, rng);
    EdgeAssignment a;
    a.write_only = {2};
    const auto r = transmit(code, x, a, jam);
    const Matrix span = stack_rows(x, jam);
    CHECK(rank(stack_rows(span, r.y)) == rank(span));
  }
}

TEST_CASE("T_AB is usually invertible over a large field") {
  const Field f(2, 8);  // q = 256
  const Topology t = Topology::parallel(2);
  Rng rng(66);
  int invertible = 0;
  const int trials = 500;
  for (int i = 0; i < trials; ++i) {
    const NetworkCode code = sample_rlnc(t, f, rng);
    const auto tm = nominal_transfer(code, EdgeAssignment{});
    if (rank(tm.t_ab) == 2) ++invertible;
  }
  CHECK(static_cast<double>(invertible) / trials >= 0.99);
}

TEST_CASE("sink keeps the first C in-edges when in-degree exceeds C") {
  const Field f2(2);
  // Three sink in-edges but min-cut 2 (source has out-degree 2).
  const Topology t(3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {1, 2}}, 0, 2);
  CHECK(t.min_cut() == 2);
  Rng rng(5);
  const NetworkCode code = sample_rlnc(t, f2, rng);
  const Matrix x = random_matrix(f2, 2, 4, rng);
  const auto r = transmit(code, x, EdgeAssignment{}, std::nullopt);
  CHECK(r.y.rows() == 2);
  CHECK(r.transfer.t_ab.rows() == 2);
}
