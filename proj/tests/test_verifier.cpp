#include <gtest/gtest.h>

#include "semifact/errors.hpp"
#include "semifact/serialize.hpp"
#include "semifact/verifier.hpp"

using namespace semifact;

namespace {

Rat q(long n, long d = 1) { return make_rat(n, d); }
UTMatrix M(const char* text) { return UTMatrix::parse(Semialgebra::nat(), text); }

}  // namespace

TEST(BruteAtom, Examples) {
    EXPECT_TRUE(brute_force_matrix_atom(M("1,1;0,1"), 5));
    EXPECT_FALSE(brute_force_matrix_atom(M("1,2;0,1"), 5));
    EXPECT_FALSE(brute_force_matrix_atom(M("1,0;0,1"), 5));
    EXPECT_TRUE(brute_force_matrix_atom(M("3,0;0,1"), 5));
    EXPECT_FALSE(brute_force_matrix_atom(M("2,1;0,2"), 5));
    EXPECT_TRUE(brute_force_matrix_atom(M("1,0,0;0,1,1;0,0,1"), 2));
    EXPECT_FALSE(brute_force_matrix_atom(M("1,1,1;0,1,1;0,0,1"), 2));
}

TEST(BruteAtom, AgreesWithPredicateOnThreeByThree) {
    for (long a = 1; a <= 2; ++a)
        for (long b = 0; b <= 2; ++b)
            for (long f = 1; f <= 2; ++f) {
                UTMatrix A = UTMatrix::identity(Semialgebra::nat(), 3);
                A.set(0, 0, Rat(a));
                A.set(1, 2, Rat(b));
                A.set(2, 2, Rat(f));
                EXPECT_EQ(brute_force_matrix_atom(A, 2), is_matrix_atom(A)) << A.str();
            }
}

TEST(AtomCharacterization, Examples) {
    for (auto [n, bound] : {std::pair<size_t, long>{2, 4}, {2, 0}, {3, 2}}) {
        CheckReport r = check_atom_characterization(n, bound);
        EXPECT_EQ(r.status, Status::Pass) << n << " " << bound;
        EXPECT_TRUE(r.violations.empty());
        EXPECT_GT(r.instances_tested, 0);
    }
    EXPECT_EQ(check_atom_characterization(2, 4).instances_tested, 4 * 5 * 4);
}

TEST(SigmaCheck, PassesAndRecordsSeed) {
    CheckReport r = check_sigma_superadditivity(500, 1);
    EXPECT_EQ(r.status, Status::Pass);
    EXPECT_EQ(r.instances_tested, 500);
    ASSERT_TRUE(r.seed);
    EXPECT_EQ(*r.seed, 1u);
}

TEST(Equivalence, Examples) {
    std::vector<Rat> one_to_twenty;
    for (long x = 1; x <= 20; ++x) one_to_twenty.push_back(Rat(x));
    EXPECT_EQ(check_divisor_atom_factorization_equivalence(Semialgebra::nat(), one_to_twenty).status, Status::Pass);

    const Semialgebra s32 = Semialgebra::cyclic(q(3, 2));
    std::vector<Rat> members;
    for (const Element& x : add_divisors(s32, Element(q(27, 4))).items)
        if (!x.is_zero() && members.size() < 15) members.push_back(x.rat());
    ASSERT_EQ(members.size(), 15u);
    CheckReport c = check_divisor_atom_factorization_equivalence(s32, members);
    EXPECT_EQ(c.status, Status::Pass);
    EXPECT_EQ(c.instances_tested, 15);

    CheckReport d = check_divisor_atom_factorization_equivalence(Semialgebra::conducted(q(2)), {q(9, 2)});
    EXPECT_EQ(d.status, Status::Inconclusive);
    EXPECT_TRUE(d.violations.empty());
}

TEST(Transfer, Examples) {
    const Bounds b{.depth = 6};
    EXPECT_EQ(check_transfer_diagram(Semialgebra::nat(), 2, b).status, Status::Pass);
    EXPECT_EQ(check_transfer_diagram(Semialgebra::cyclic(q(3, 2)), 2, b).status, Status::Pass);
    CheckReport down = check_transfer_diagram(Semialgebra::cyclic(q(2, 3)), 2, b);
    EXPECT_NE(down.status, Status::Fail);
    EXPECT_TRUE(down.violations.empty());
    CheckReport c = check_transfer_diagram(Semialgebra::conducted(q(2)), 2, Bounds{.max_den = 12, .depth = 6});
    EXPECT_NE(c.status, Status::Fail);
    EXPECT_TRUE(c.violations.empty());
}

TEST(Census, Examples) {
    EXPECT_EQ(check_atom_census(Semialgebra::nat(), 100).status, Status::Pass);
    EXPECT_EQ(check_atom_census(Semialgebra::cyclic(q(2, 3)), 10).status, Status::Pass);
    EXPECT_EQ(check_atom_census(Semialgebra::conducted(q(2)), 8).status, Status::Pass);
    EXPECT_EQ(check_atom_census(Semialgebra::qnn(), 8).status, Status::Inconclusive);
}

TEST(Reports, SettleMatchesViolations) {
    CheckReport r;
    r.violations.push_back("x");
    r.settle();
    EXPECT_EQ(r.status, Status::Fail);
    CheckReport s;
    s.status = Status::Inconclusive;
    s.settle();
    EXPECT_EQ(s.status, Status::Inconclusive);
    CheckReport t;
    t.settle();
    EXPECT_EQ(t.status, Status::Pass);
    EXPECT_EQ(status_name(Status::Fail), "Fail");
}

TEST(Suites, DeterministicAndNeverFail) {
    for (const char* name : {"atoms", "sigma", "equivalence", "transfer"}) {
        auto a = run_suite(name, 1), b = run_suite(name, 1);
        ASSERT_EQ(a.size(), b.size());
        ASSERT_FALSE(a.empty()) << name;
        for (size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
            EXPECT_NE(a[i].status, Status::Fail) << a[i].check_name;
        }
    }
    EXPECT_EQ(to_json(run_suite("sigma", 2)[0]).dump(), to_json(run_suite("sigma", 2)[0]).dump());
    EXPECT_THROW(run_suite("nope", 1), DomainError);
}
