#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "sdnbgp/graph.hpp"

using namespace sdnbgp;

TEST(FullMesh, EdgeCounts) {
    EXPECT_EQ(gen_full_mesh(3).edge_count(), 3u);
    EXPECT_EQ(gen_full_mesh(1).edge_count(), 0u);
    EXPECT_EQ(gen_full_mesh(100).edge_count(), 4950u);
}

TEST(Poisson, DegenerateProbabilities) {
    EXPECT_EQ(gen_poisson(50, 0.0, 1).edge_count(), 0u);
    EXPECT_EQ(gen_poisson(50, 1.0, 1).edge_count(), 50u * 49 / 2);
}

TEST(Poisson, EdgeCountWithinFourSigma) {
    const auto g = gen_poisson(1000, 0.005, 77);
    const double mean = 499500.0 * 0.005; // C(1000,2) * p
    const double sigma = std::sqrt(499500.0 * 0.005 * 0.995);
    EXPECT_NEAR(static_cast<double>(g.edge_count()), mean, 4.0 * sigma);
}

TEST(Poisson, SeedDeterminism) {
    const auto a = gen_poisson(200, 0.02, 5);
    const auto b = gen_poisson(200, 0.02, 5);
    const auto c = gen_poisson(200, 0.02, 6);
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_NE(a.hash(), c.hash());
}

TEST(BarabasiAlbert, DegreeStructure) {
    const auto g = gen_barabasi_albert(1000, 5, 11);
    EXPECT_EQ(g.edge_count(), 5u * 995);
    const double avg = 2.0 * static_cast<double>(g.edge_count()) / g.n();
    EXPECT_GT(avg, 9.5);
    EXPECT_LT(avg, 10.5);
}

TEST(BarabasiAlbert, HeavyTail) {
    // max degree at least 5x median across seeds
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = gen_barabasi_albert(1000, 5, seed);
        std::vector<int> deg(1000);
        for (int v = 0; v < 1000; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
        std::sort(deg.begin(), deg.end());
        EXPECT_GE(deg.back(), 5 * deg[500]);
    }
}

TEST(BarabasiAlbert, ParameterValidation) {
    EXPECT_THROW(gen_barabasi_albert(5, 0, 1), DomainError);
    EXPECT_THROW(gen_barabasi_albert(5, 5, 1), DomainError);
}

TEST(SmallWorld, LatticeWhenNoShortcuts) {
    const auto g = gen_small_world(20, 4, 0.0, 3);
    for (int v = 0; v < 20; ++v) EXPECT_EQ(g.degree(v), 4);
    EXPECT_THROW(gen_small_world(20, 3, 0.0, 1), DomainError);
    EXPECT_THROW(gen_small_world(20, 20, 0.0, 1), DomainError);
}

TEST(SmallWorld, ShortcutsOnlyAdd) {
    const auto g = gen_small_world(100, 6, 0.3, 9);
    EXPECT_GE(g.edge_count(), 300u);
    for (int v = 0; v < 100; ++v) EXPECT_GE(g.degree(v), 6);
}

TEST(Generators, SeedDeterminism) {
    EXPECT_EQ(gen_barabasi_albert(300, 4, 9).hash(), gen_barabasi_albert(300, 4, 9).hash());
    EXPECT_NE(gen_barabasi_albert(300, 4, 9).hash(), gen_barabasi_albert(300, 4, 10).hash());
    EXPECT_EQ(gen_small_world(120, 6, 0.2, 9).hash(), gen_small_world(120, 6, 0.2, 9).hash());
    EXPECT_NE(gen_small_world(120, 6, 0.2, 9).hash(), gen_small_world(120, 6, 0.2, 8).hash());
}

TEST(Graph, RejectsLoopsAndDuplicates) {
    AsGraph g(4);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(2, 2), DomainError);
    EXPECT_THROW(g.add_edge(1, 0), DomainError);
    EXPECT_THROW(g.add_p2p_edge(2, 3), DomainError); // label mode is all-or-nothing
}

TEST(Caida, ParsesRelationships) {
    std::istringstream in("# comment\n1|2|-1\n2|3|0\n");
    const AsGraph g = load_caida_asrel(in);
    EXPECT_EQ(g.n(), 3);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(g.labeled());
    // node ids follow first appearance: 1 -> 0, 2 -> 1, 3 -> 2
    EXPECT_EQ(g.asn(0), 1);
    // 1 is the provider of 2
    Rel rel_at_1 = Rel::None;
    for (const auto& nb : g.neighbors(0))
        if (nb.id == 1) rel_at_1 = nb.rel;
    EXPECT_EQ(rel_at_1, Rel::Customer); // node 2 is node 1's customer
    Rel rel_at_2 = Rel::None;
    for (const auto& nb : g.neighbors(1))
        if (nb.id == 2) rel_at_2 = nb.rel;
    EXPECT_EQ(rel_at_2, Rel::Peer);
}

TEST(Caida, CommentOnlyFileIsEmptyGraph) {
    std::istringstream in("# nothing\n# here\n");
    EXPECT_EQ(load_caida_asrel(in).n(), 0);
}

TEST(Caida, MalformedInputs) {
    std::istringstream bad_code("1|2|7\n");
    EXPECT_THROW(load_caida_asrel(bad_code), ParseError);
    std::istringstream bad_fields("1|2\n");
    EXPECT_THROW(load_caida_asrel(bad_fields), ParseError);
    std::istringstream bad_num("a|2|0\n");
    EXPECT_THROW(load_caida_asrel(bad_num), ParseError);
}

TEST(Caida, DuplicatesAndConflicts) {
    std::istringstream dup("1|2|-1\n1|2|-1\n");
    EXPECT_EQ(load_caida_asrel(dup).edge_count(), 1u);
    std::istringstream conflict("1|2|-1\n2|1|-1\n");
    EXPECT_THROW(load_caida_asrel(conflict), ConflictError);
    std::istringstream conflict2("1|2|-1\n1|2|0\n");
    EXPECT_THROW(load_caida_asrel(conflict2), ConflictError);
}

TEST(LocalPrefs, PermutationPerNode) {
    std::istringstream in("1|2|-1\n1|3|-1\n1|4|-1\n2|3|0\n");
    AsGraph g = load_caida_asrel(in);
    g.assign_local_prefs(99);
    for (int v = 0; v < g.n(); ++v) {
        std::set<int> ranks;
        for (const auto& nb : g.neighbors(v)) ranks.insert(nb.pref);
        ASSERT_EQ(static_cast<int>(ranks.size()), g.degree(v));
        EXPECT_EQ(*ranks.begin(), 1);
        EXPECT_EQ(*ranks.rbegin(), g.degree(v));
    }
    // single-neighbor node has rank 1
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 1) {
            EXPECT_EQ(g.neighbors(v)[0].pref, 1);
        }
}

TEST(LocalPrefs, Deterministic) {
    auto make = [] {
        std::istringstream in("1|2|-1\n1|3|-1\n2|3|0\n3|4|-1\n");
        AsGraph g = load_caida_asrel(in);
        g.assign_local_prefs(4242);
        return g;
    };
    const AsGraph a = make(), b = make();
    for (int v = 0; v < a.n(); ++v)
        for (std::size_t i = 0; i < a.neighbors(v).size(); ++i)
            EXPECT_EQ(a.neighbors(v)[i].pref, b.neighbors(v)[i].pref);
}

TEST(LocalPrefs, RequiresLabels) {
    AsGraph g = gen_full_mesh(4);
    EXPECT_THROW(g.assign_local_prefs(1), UnlabeledGraph);
}

TEST(Prune, DropsStubsAndLowDegree) {
    // 1 provides 2,3,4; 2-3 peer; 4 is a stub spur with one extra customer 5
    std::istringstream in("1|2|-1\n1|3|-1\n1|4|-1\n2|3|0\n2|4|0\n3|4|0\n4|5|-1\n");
    const AsGraph g = load_caida_asrel(in);
    EXPECT_EQ(g.n(), 5);
    const AsGraph pruned = prune(g, 3, true);
    // 5 is a stub (no customers) and 2, 3 have none either; only 1 and 4
    // have customers, and after removing stubs their degrees collapse
    EXPECT_LT(pruned.n(), g.n());
    for (int v = 0; v < pruned.n(); ++v) EXPECT_GE(pruned.degree(v), 3);
}

TEST(Prune, KeepsDenseCore) {
    std::stringstream in;
    // 5-clique of peers, each providing one stub
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) in << a << '|' << b << "|0\n";
    for (int a = 1; a <= 5; ++a) in << a << '|' << (10 + a) << "|-1\n";
    AsGraph g = load_caida_asrel(in);
    const AsGraph pruned = prune(g, 3, true);
    EXPECT_EQ(pruned.n(), 5);
    EXPECT_EQ(pruned.edge_count(), 10u);
    // original AS numbers survive the renumbering
    std::set<long> asns;
    for (int v = 0; v < pruned.n(); ++v) asns.insert(pruned.asn(v));
    EXPECT_EQ(asns, (std::set<long>{1, 2, 3, 4, 5}));
}

TEST(EdgeCsv, LabeledAndUnlabeled) {
    std::istringstream in("1|2|-1\n2|3|0\n");
    const AsGraph g = load_caida_asrel(in);
    std::stringstream out;
    g.write_edge_csv(out);
    EXPECT_EQ(out.str(), "u,v,label\n1,0,c2p\n1,2,p2p\n");
    std::stringstream out2;
    gen_full_mesh(3).write_edge_csv(out2);
    EXPECT_EQ(out2.str(), "u,v,label\n0,1,none\n0,2,none\n1,2,none\n");
}

TEST(GraphHash, SensitiveToLabelsAndOrientation) {
    // same dense-id structure, different labels or orientation
    std::istringstream a("1|3|0\n1|2|-1\n"), b("1|3|0\n2|1|-1\n"), c("1|3|0\n1|2|0\n");
    const auto ga = load_caida_asrel(a);
    const auto gb = load_caida_asrel(b);
    const auto gc = load_caida_asrel(c);
    EXPECT_NE(ga.hash(), gb.hash());
    EXPECT_NE(ga.hash(), gc.hash());
    std::istringstream a2("1|3|0\n1|2|-1\n");
    EXPECT_EQ(load_caida_asrel(a2).hash(), ga.hash());
}
