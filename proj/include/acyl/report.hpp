#pragma once

// One row of block invariants, as printed by `acyl block`.

#include "acyl/blocks.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acyl {

struct DivC2 {
    std::optional<long long> value;  // exact when known
    long long lower = 2, upper = 0;
    bool operator==(const DivC2&) const = default;
};

struct InvariantReport {
    std::string name;
    long long degree = 0;
    long long h2_Z = 0;
    GramLattice N_gram;
    long long rank_K = 0;
    long long b3_Z = 0;
    std::vector<DivC2> div_c2;  // Y first, then each flop in order
    long long e = 0;
    std::vector<long long> b_V;  // b1..b5 of the open 3-fold
    bool torsion_unknown = false;
    std::vector<std::string> checks;

    bool operator==(const InvariantReport&) const = default;
};

// Runs every consistency check the descriptor supports; mathematical
// failures throw with a code outside the input range.
InvariantReport block_report(const BlockDescriptor& d);

std::string report_json(const InvariantReport& r);
InvariantReport report_from_json(const std::string& text);
std::string report_table(const InvariantReport& r);

// text listing of the built-in rank one Fano table
std::string fano_rank1_table_text();
std::string fano_rank1_table_json();

}  // namespace acyl
