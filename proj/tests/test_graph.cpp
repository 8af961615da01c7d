#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "trifind/generators.hpp"
#include "trifind/graph.hpp"
#include "trifind/graph_io.hpp"
#include "trifind/ledger.hpp"
#include "trifind/rng.hpp"

using namespace trifind;

namespace {

Graph path3() {
  GraphBuilder b(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  return std::move(b).build();
}

// Reference triangle finder written independently of the bit tricks.
std::optional<Triangle> naive_triangle(const Graph& g) {
  const auto n = static_cast<Vertex>(g.n());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c)
        if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c)) return Triangle{{a, b, c}};
  return std::nullopt;
}

}  // namespace

TEST(Query, EdgeOfThreeCycle) {
  const Graph k3 = complete_graph(3);
  QueryLedger ledger;
  EXPECT_TRUE(query(k3, ledger, 0, 1));
  EXPECT_EQ(ledger.raw_probes(), 1u);
}

TEST(Query, EdgelessAlwaysFalse) {
  const Graph g = empty_graph(6);
  QueryLedger ledger;
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = 0; v < 6; ++v)
      if (u != v) {
        EXPECT_FALSE(query(g, ledger, u, v));
      }
  EXPECT_EQ(ledger.raw_probes(), 30u);
}

TEST(Query, PathEndpointsNotAdjacent) {
  QueryLedger ledger;
  EXPECT_FALSE(query(path3(), ledger, 0, 2));
}

TEST(Query, SymmetricAndRepeatable) {
  const Graph g = gen_er(40, 0.3, 5);
  QueryLedger ledger;
  std::uint64_t last = 0;
  for (Vertex u = 0; u < 40; ++u)
    for (Vertex v = u + 1; v < 40; ++v) {
      const bool a = query(g, ledger, u, v);
      const bool b = query(g, ledger, v, u);
      const bool c = query(g, ledger, u, v);
      EXPECT_EQ(a, b);
      EXPECT_EQ(a, c);
      EXPECT_GT(ledger.raw_probes(), last);
      last = ledger.raw_probes();
    }
  EXPECT_TRUE(ledger.charges().empty());
}

TEST(Query, RejectsSelfPairAndOutOfRange) {
  const Graph g = complete_graph(4);
  QueryLedger ledger;
  EXPECT_THROW(query(g, ledger, 2, 2), ContractViolation);
  EXPECT_THROW(query(g, ledger, 0, 4), ContractViolation);
  EXPECT_THROW(query(g, ledger, 9, 1), ContractViolation);
  EXPECT_EQ(ledger.raw_probes(), 0u);
}

TEST(GraphBuilder, RejectsSelfLoopsAndBadVertices) {
  GraphBuilder b(5);
  EXPECT_THROW(b.add_edge(3, 3), ContractViolation);
  EXPECT_THROW(b.add_edge(0, 5), ContractViolation);
  EXPECT_THROW(GraphBuilder(0), ContractViolation);
}

TEST(Graph, NeighborsConsistentWithAdjacency) {
  const Graph g = gen_er(70, 0.4, 11);
  std::size_t degree_sum = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    const auto nb = g.neighbors(u);
    EXPECT_EQ(nb.size(), g.degree(u));
    degree_sum += nb.size();
    std::set<Vertex> s(nb.begin(), nb.end());
    for (Vertex v = 0; v < g.n(); ++v) {
      EXPECT_EQ(g.adjacent(u, v), s.count(v) == 1);
      EXPECT_EQ(g.adjacent(u, v), g.adjacent(v, u));
    }
    EXPECT_FALSE(g.adjacent(u, u));
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(Graph, CommonNeighborCountMatchesScan) {
  const Graph g = gen_er(90, 0.5, 2);
  for (Vertex u = 0; u < 20; ++u)
    for (Vertex v = u + 1; v < 20; ++v) {
      std::size_t c = 0;
      for (Vertex w = 0; w < g.n(); ++w) c += g.adjacent(u, w) && g.adjacent(v, w);
      EXPECT_EQ(g.common_neighbor_count(u, v), c);
    }
}

TEST(GenEr, ExtremeProbabilities) {
  EXPECT_EQ(gen_er(5, 0.0, 7).edge_count(), 0u);
  EXPECT_EQ(gen_er(5, 1.0, 7), complete_graph(5));
}

TEST(GenEr, EdgeCountWithinFiveSigma) {
  const double mean = 4950 * 0.5;
  const double sigma = std::sqrt(4950 * 0.25);
  const double count = static_cast<double>(gen_er(100, 0.5, 1).edge_count());
  EXPECT_NEAR(mean, 2475.0, 1e-12);
  EXPECT_LE(std::abs(count - mean), 5 * sigma);
}

TEST(GenEr, DeterministicPerSeed) {
  EXPECT_EQ(gen_er(60, 0.3, 99), gen_er(60, 0.3, 99));
  EXPECT_FALSE(gen_er(60, 0.3, 99) == gen_er(60, 0.3, 100));
}

TEST(GenEr, RejectsBadProbability) {
  EXPECT_THROW(gen_er(5, -0.1, 1), ContractViolation);
  EXPECT_THROW(gen_er(5, 1.5, 1), ContractViolation);
}

TEST(GenTriangleFree, TwoVertices) {
  const Graph g = gen_triangle_free(2, 3);
  EXPECT_LE(g.edge_count(), 1u);
  EXPECT_FALSE(brute_force_triangle(g));
}

TEST(GenTriangleFree, NoTrianglesAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = gen_triangle_free(64, seed);
    EXPECT_FALSE(naive_triangle(g)) << "seed " << seed;
    EXPECT_EQ(count_triangles(g), 0u);
  }
}

TEST(GenTriangleFree, EdgeCountWithinFiveSigma) {
  const double sigma = std::sqrt(1024 * 0.25);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double count = static_cast<double>(gen_triangle_free(64, seed).edge_count());
    EXPECT_LE(std::abs(count - 512.0), 5 * sigma);
  }
}

TEST(GenPlanted, ThreeVerticesGiveK3) {
  EXPECT_EQ(gen_planted(3, 4), complete_graph(3));
}

TEST(GenPlanted, PlantedTriangleIsTheUniqueOne) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = gen_planted_instance(64, seed);
    EXPECT_EQ(count_triangles(inst.graph), 1u);
    const auto found = brute_force_triangle(inst.graph);
    ASSERT_TRUE(found);
    EXPECT_EQ(*found, inst.planted);
  }
}

TEST(GenPlanted, DifferentSeedsDifferentTriples) {
  std::set<Triangle> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) seen.insert(gen_planted_instance(64, seed).planted);
  EXPECT_GE(seen.size(), 19u);
}

TEST(GenPlanted, RejectsTinyN) { EXPECT_THROW(gen_planted(2, 0), ContractViolation); }

TEST(BruteForce, LexicographicMinimum) {
  const auto t = brute_force_triangle(complete_graph(4));
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Triangle{{0, 1, 2}}));
  EXPECT_FALSE(brute_force_triangle(empty_graph(10)));
}

TEST(BruteForce, AgreesWithNaiveScan) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Graph g = gen_er(5 + seed % 40, 0.05 + 0.01 * static_cast<double>(seed % 20), seed);
    EXPECT_EQ(brute_force_triangle(g), naive_triangle(g)) << "seed " << seed;
  }
}

TEST(BruteForce, WordBoundarySizes) {
  for (std::size_t n : {63u, 64u, 65u, 127u, 128u, 129u}) {
    GraphBuilder b(n);
    const auto last = static_cast<Vertex>(n - 1);
    b.add_edge(last - 2, last - 1);
    b.add_edge(last - 1, last);
    b.add_edge(last - 2, last);
    const auto t = brute_force_triangle(std::move(b).build());
    ASSERT_TRUE(t);
    EXPECT_EQ(*t, (Triangle{{last - 2, last - 1, last}}));
  }
}

TEST(VerifyTriangle, CountsProbesAndRejectsBadTriples) {
  const Graph g = complete_graph(4);
  QueryLedger ledger;
  EXPECT_TRUE(verify_triangle(g, ledger, Triangle::of(3, 1, 2)));
  EXPECT_EQ(ledger.raw_probes(), 3u);
  EXPECT_FALSE(verify_triangle(g, ledger, Triangle{{1, 1, 2}}));
  EXPECT_FALSE(verify_triangle(path3(), ledger, Triangle{{0, 1, 2}}));
}

TEST(Ledger, TotalIsSumOfPhases) {
  QueryLedger ledger;
  ledger.charge("a", 1.5);
  ledger.charge("b", 2.25);
  ledger.charge("a", 0.25);
  ledger.declare("c");
  EXPECT_DOUBLE_EQ(ledger.charged("a"), 1.75);
  EXPECT_DOUBLE_EQ(ledger.charged("c"), 0.0);
  EXPECT_DOUBLE_EQ(ledger.charged("missing"), 0.0);
  EXPECT_DOUBLE_EQ(ledger.total(), 4.0);
  EXPECT_EQ(ledger.charges().size(), 3u);
}

TEST(Ledger, RejectsNegativeAndNonFinite) {
  QueryLedger ledger;
  EXPECT_THROW(ledger.charge("a", -1.0), ContractViolation);
  EXPECT_THROW(ledger.charge("a", std::nan("")), ContractViolation);
  EXPECT_THROW(ledger.charge("a", INFINITY), ContractViolation);
}

TEST(Ledger, MergeAddsPhasesAndProbes) {
  QueryLedger a, b;
  a.charge("x", 1.0);
  a.add_probes(4);
  b.charge("x", 2.0);
  b.charge("y", 3.0);
  b.add_probes(6);
  a.merge(b);
  EXPECT_DOUBLE_EQ(a.charged("x"), 3.0);
  EXPECT_DOUBLE_EQ(a.charged("y"), 3.0);
  EXPECT_EQ(a.raw_probes(), 10u);
}

TEST(Rng, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a", 0), derive_seed(1, "a", 1));
  EXPECT_NE(derive_seed(1, {}), derive_seed(2, {}));
}

TEST(EdgeListIO, RoundTrip) {
  const Graph g = gen_er(77, 0.2, 3);
  std::stringstream buf;
  write_edge_list(buf, g);
  EXPECT_EQ(read_edge_list(buf), g);
}

TEST(EdgeListIO, CommentsAndBlankLines) {
  std::stringstream in("# a path\n\nn 3\n0 1\n\n# middle\n1 2\n");
  EXPECT_EQ(read_edge_list(in), path3());
}

TEST(EdgeListIO, RejectsMalformedInput) {
  for (const char* text : {"", "x 3\n", "n 3\n0 3\n", "n 3\n1 1\n", "n 3\n0\n", "n 3\n0 1 2\n",
                           "n 0\n", "n 3\n0 a\n"}) {
    std::stringstream in(text);
    EXPECT_THROW(read_edge_list(in), FormatError) << "input: " << text;
  }
}

TEST(BinaryIO, RoundTripAcrossWordBoundaries) {
  for (std::size_t n : {1u, 2u, 63u, 64u, 65u, 200u}) {
    const Graph g = gen_er(n, 0.5, n);
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    write_binary(buf, g);
    EXPECT_EQ(read_binary(buf), g);
  }
}

TEST(BinaryIO, RejectsCorruption) {
  const Graph g = gen_er(10, 0.5, 1);
  std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
  write_binary(buf, g);
  const std::string good = buf.str();

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  std::stringstream in1(bad_magic);
  EXPECT_THROW(read_binary(in1), FormatError);

  std::stringstream in2(good.substr(0, good.size() - 3));
  EXPECT_THROW(read_binary(in2), FormatError);

  // Flip one bit in row 0 only, breaking symmetry.
  std::string asym = good;
  const std::size_t header = 8 + 4 + 8;
  asym[header] = static_cast<char>(asym[header] ^ 0x02);
  std::stringstream in3(asym);
  EXPECT_THROW(read_binary(in3), FormatError);
}

TEST(GraphFiles, SaveAndLoadByExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "trifind_io_test";
  std::filesystem::create_directories(dir);
  const Graph g = gen_planted(50, 8);
  for (const char* name : {"g.txt", "g.bin"}) {
    const auto path = (dir / name).string();
    save_graph(path, g);
    EXPECT_EQ(load_graph(path), g);
  }
  EXPECT_THROW(load_graph((dir / "missing.txt").string()), FormatError);
  std::filesystem::remove_all(dir);
}
