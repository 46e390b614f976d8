#include "thoma/partition.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace thoma;

TEST_CASE("enumerate_partitions basics") {
    auto p0 = enumerate_partitions(0);
    REQUIRE(p0.size() == 1);
    REQUIRE(p0[0].empty());

    auto p5 = enumerate_partitions(5);
    REQUIRE(p5.size() == 7);
    // Reverse lexicographic: (5) first, 1^5 last.
    REQUIRE(p5.front().str() == "5");
    REQUIRE(p5.back().str() == "1,1,1,1,1");

    auto p30 = enumerate_partitions(30);
    REQUIRE(p30.size() == 5604);
    REQUIRE(BigInt(p30.size()) == oracles::partition_count(30));

    SECTION("no duplicates, all of weight n") {
        std::set<std::vector<int>> seen;
        for (const auto& lam : p5) {
            REQUIRE(lam.n() == 5);
            REQUIRE(seen.insert(lam.parts()).second);
        }
    }
    SECTION("counts match the pentagonal recurrence") {
        for (unsigned n = 0; n <= 20; ++n)
            REQUIRE(BigInt(enumerate_partitions(n).size()) == oracles::partition_count(n));
    }
    SECTION("cap raises a resource error") {
        REQUIRE_THROWS_AS(enumerate_partitions(61), resource_error);
        REQUIRE_NOTHROW(enumerate_partitions(61, 61));
    }
}

TEST_CASE("dimension by hook lengths") {
    REQUIRE(dimension(Partition({7})) == 1);
    REQUIRE(dimension(Partition({2, 1})) == 2);
    REQUIRE(dimension(Partition({3, 2})) == 5);
    REQUIRE(dimension(Partition{}) == 1);

    SECTION("equals brute-force tableau count for n <= 10") {
        for (unsigned n = 1; n <= 10; ++n)
            for (const auto& lam : enumerate_partitions(n))
                REQUIRE(dimension(lam) == oracles::count_standard_tableaux(lam.parts()));
    }
    SECTION("sum of dim^2 over Y_n equals n!") {
        for (unsigned n = 1; n <= 12; ++n) {
            BigInt acc = 0;
            for (const auto& lam : enumerate_partitions(n)) {
                BigInt d = dimension(lam);
                acc += d * d;
            }
            REQUIRE(acc == factorial(n));
        }
    }
    SECTION("log_dimension agrees with the exact value") {
        Partition lam({6, 4, 4, 1});
        REQUIRE(std::abs(log_dimension(lam) - std::log(to_double(dimension(lam)))) < 1e-12);
    }
}

TEST_CASE("transpose") {
    REQUIRE(transpose(Partition({3, 1})) == Partition({2, 1, 1}));
    REQUIRE(transpose(Partition{}) == Partition{});
    for (unsigned n = 0; n <= 12; ++n)
        for (const auto& lam : enumerate_partitions(n))
            REQUIRE(transpose(transpose(lam)) == lam);
}

TEST_CASE("box data: contents and hooks") {
    auto b2 = box_data(Partition({2}));
    REQUIRE(b2.size() == 2);
    REQUIRE(b2[0].content == 0);
    REQUIRE(b2[1].content == 1);

    auto b11 = box_data(Partition({1, 1}));
    REQUIRE(b11[0].content == 0);
    REQUIRE(b11[1].content == -1);

    auto b22 = box_data(Partition({2, 2}));
    std::multiset<int> hooks;
    int prod = 1;
    for (const auto& b : b22) {
        hooks.insert(b.hook);
        prod *= b.hook;
    }
    REQUIRE(hooks == std::multiset<int>{3, 2, 2, 1});
    REQUIRE(prod == 12);
    REQUIRE(dimension(Partition({2, 2})) == 2);  // 4!/12
}

TEST_CASE("modified Frobenius coordinates") {
    auto f31 = frobenius(Partition({3, 1}));
    REQUIRE(f31.d() == 1);
    REQUIRE(f31.a[0] == HalfInt{5});
    REQUIRE(f31.b[0] == HalfInt{3});

    auto f1 = frobenius(Partition({1}));
    REQUIRE(f1.a[0] == HalfInt{1});
    REQUIRE(f1.b[0] == HalfInt{1});

    auto f21 = frobenius(Partition({2, 1}));
    REQUIRE(f21.a[0] == HalfInt{3});
    REQUIRE(f21.b[0] == HalfInt{3});

    SECTION("sum identity and transpose swap, n <= 12") {
        for (unsigned n = 1; n <= 12; ++n)
            for (const auto& lam : enumerate_partitions(n)) {
                auto fc = frobenius(lam);
                std::int64_t twice_sum = 0;
                for (std::size_t i = 0; i < fc.d(); ++i) {
                    REQUIRE(fc.a[i].is_odd_half());
                    REQUIRE(fc.b[i].is_odd_half());
                    if (i + 1 < fc.d()) {
                        REQUIRE(fc.a[i] > fc.a[i + 1]);
                        REQUIRE(fc.b[i] > fc.b[i + 1]);
                    }
                    twice_sum += fc.a[i].num + fc.b[i].num;
                }
                REQUIRE(twice_sum == 2 * lam.n());
                auto ft = frobenius(transpose(lam));
                REQUIRE(ft.a == fc.b);
                REQUIRE(ft.b == fc.a);
            }
    }
}

TEST_CASE("thoma_embed") {
    auto w1 = thoma_embed(Partition({1}));
    REQUIRE(w1.alpha == std::vector<Rational>{Rational(1, 2)});
    REQUIRE(w1.beta == std::vector<Rational>{Rational(1, 2)});
    REQUIRE(w1.deficiency() == 0);

    auto w5 = thoma_embed(Partition({5}));
    REQUIRE(w5.alpha == std::vector<Rational>{Rational(9, 10)});
    REQUIRE(w5.beta == std::vector<Rational>{Rational(1, 10)});

    REQUIRE_THROWS_AS(thoma_embed(Partition{}), std::domain_error);

    SECTION("deficiency exactly zero and coordinates recover a_i, b_i, n <= 20") {
        for (unsigned n = 1; n <= 20; ++n)
            for (const auto& lam : enumerate_partitions(n)) {
                auto w = thoma_embed(lam);
                REQUIRE(w.deficiency() == 0);
                auto fc = frobenius(lam);
                for (std::size_t i = 0; i < fc.d(); ++i) {
                    REQUIRE(w.alpha[i] * lam.n() == fc.a[i].rational());
                    REQUIRE(w.beta[i] * lam.n() == fc.b[i].rational());
                }
            }
    }
}

TEST_CASE("addable and removable corners") {
    auto c0 = addable_removable(Partition{});
    REQUIRE(c0.addable.size() == 1);
    REQUIRE(c0.addable[0].row == 1);
    REQUIRE(c0.addable[0].col == 1);
    REQUIRE(c0.removable.empty());

    auto c21 = addable_removable(Partition({2, 1}));
    REQUIRE(c21.addable.size() == 3);
    REQUIRE(c21.addable[0].row == 1);
    REQUIRE(c21.addable[0].col == 3);
    REQUIRE(c21.addable[1].row == 2);
    REQUIRE(c21.addable[1].col == 2);
    REQUIRE(c21.addable[2].row == 3);
    REQUIRE(c21.addable[2].col == 1);
    REQUIRE(c21.removable.size() == 2);
    REQUIRE(c21.removable[0].col == 2);
    REQUIRE(c21.removable[1].col == 1);

    SECTION("counts differ by one; add_box covers; interlacing") {
        for (unsigned n = 0; n <= 12; ++n)
            for (const auto& lam : enumerate_partitions(n)) {
                auto cs = addable_removable(lam);
                REQUIRE(cs.addable.size() == cs.removable.size() + 1);
                for (std::size_t k = 0; k < cs.removable.size(); ++k) {
                    REQUIRE(cs.addable[k].content > cs.removable[k].content);
                    REQUIRE(cs.removable[k].content > cs.addable[k + 1].content);
                }
                for (const auto& c : cs.addable) {
                    auto mu = add_box(lam, c);
                    REQUIRE(mu.n() == lam.n() + 1);
                    REQUIRE(covers(mu, lam));
                }
            }
    }
}

TEST_CASE("serialization round trip") {
    REQUIRE(Partition({3, 1}).str() == "3,1");
    REQUIRE(Partition{}.str() == "-");
    REQUIRE(Partition::parse("3,1") == Partition({3, 1}));
    REQUIRE(Partition::parse("-") == Partition{});
    for (const auto& lam : enumerate_partitions(9))
        REQUIRE(Partition::parse(lam.str()) == lam);
}
