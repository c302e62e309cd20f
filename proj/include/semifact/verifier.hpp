#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semifact/matrix.hpp"

namespace semifact {

enum class Status { Pass, Fail, Inconclusive };

struct CheckReport {
    std::string check_name;
    long instances_tested = 0;
    std::vector<std::string> violations;
    Status status = Status::Pass;
    std::optional<std::uint64_t> seed;
    std::string note;

    // Fail iff there are violations; otherwise keeps Inconclusive if it was set.
    void settle();
};

/// Exhaustive search for B, C != I over the naturals with B C = A and entries
/// <= entry_bound. Returns true when none exists; the identity is not an atom.
bool brute_force_matrix_atom(const UTMatrix& A, long entry_bound);

CheckReport check_atom_characterization(size_t n, long entry_bound);
CheckReport check_sigma_superadditivity(long samples, std::uint64_t seed);
CheckReport check_divisor_atom_factorization_equivalence(const Semialgebra& S, const std::vector<Rat>& samples,
                                                         const Bounds& b = {});
/// Samples come from the semialgebra itself.
CheckReport check_transfer_diagram(const Semialgebra& S, size_t n, const Bounds& b = {});
/// bound is a value cap for the naturals, an exponent cap for S_r and a
/// denominator cap for Q_r.
CheckReport check_atom_census(const Semialgebra& S, long bound);

/// "atoms", "sigma", "equivalence", "transfer", "census" or "all".
std::vector<CheckReport> run_suite(const std::string& name, std::uint64_t seed);

std::string status_name(Status s);

}  // namespace semifact
