#pragma once

#include "sblob/cells.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace sblob {

// A partial order on Lambda_n. `relations` holds every strict pair
// (upper, lower); `covers` the Hasse diagram.
struct LabelPoset {
    int n = 0;
    std::vector<int> elements;
    std::set<std::pair<int, int>> covers;
    std::set<std::pair<int, int>> relations;

    bool greater(int a, int b) const { return relations.count({a, b}) > 0; }
    bool comparable(int a, int b) const { return greater(a, b) || greater(b, a); }
    // Graphviz text, edges drawn from upper to lower.
    std::string dot(const std::string& name) const;
};

// Builds a poset from arbitrary generating pairs (upper, lower): takes the
// transitive closure and extracts the covering relation. Throws
// std::invalid_argument on a cycle.
LabelPoset make_poset(int n, const std::set<std::pair<int, int>>& generators);

// The cellular order: 0 on top, then the layers {1, -1}, ..., {n-1, -n+1},
// then -n, each label above every label of the next layer.
LabelPoset cellular_poset(int n);

// The coarsened order: 0 covers +-1 and +-2; for k >= 1, -k covers -(k+2)
// and +-(k+3), k covers k+2 and +-(k+3). Labels outside Lambda_n are dropped.
LabelPoset coarsened_poset(int n);

// Cellular pairs (lambda, mu) whose multiplicity [Sb_n(lambda) : L_n(mu)]
// vanishes for every unit specialisation: (+-(l-1), +-l) for l >= 2,
// (l-2, -l) and (-l+2, l) for l >= 3, (l-4, -l) for 5 <= l <= n and
// (-(l-4), l) for 5 <= l <= n-1.
std::set<std::pair<int, int>> vanishing_pairs(int n);

// dim L_n(l) = rank of the Gram matrix of Sb_n(l) over the specialisation
// field. Throws NonUnitParameter if a parameter vanishes.
std::map<int, int> simple_dims(int n, const Specialization& s, Parametrisation p = Parametrisation::GMP2);

struct DecompositionData {
    int n = 0;
    std::string spec_key;
    std::vector<int> labels;
    std::map<int, int> standard_dims;
    std::map<int, int> simple_dims;
    // (lambda, mu) -> [Sb_n(lambda) : L_n(mu)], zero entries omitted.
    std::map<std::pair<int, int>, int> mult;
    // Diagrams whose traces determined the multiplicities, and the number
    // of further diagrams used as a consistency check.
    int diagrams_solved = 0;
    int diagrams_checked = 0;

    int at(int lambda, int mu) const;
};

// Composition multiplicities of every cell module at a concrete
// specialisation, by comparing traces of basis diagrams on Sb_n(lambda) with
// those on the simple heads L_n(mu) = Sb_n(mu) / rad. Throws
// CharacterRankDeficiency if the simple characters are not separated by the
// diagram basis, NonUnitParameter for non-unit parameters.
DecompositionData decomposition(int n, const Specialization& s, Parametrisation p = Parametrisation::GMP2);

// Ext^1 between L(lambda) and L(mu) vanishes whenever the multiplicity
// [Sb(lambda) : L(mu)] does. Requires mu < lambda in the cellular order,
// otherwise throws std::invalid_argument.
bool ext_vanishing_check(const DecompositionData& d, int lambda, int mu);
bool ext_vanishing_check(int n, const Specialization& s, int lambda, int mu,
                         Parametrisation p = Parametrisation::GMP2);

// Dimension of the space of vectors of m killed by every generator.
int trivial_submodule_dim(const CellModule& m);

// A named concrete specialisation used for the multiplicity experiments.
struct BatteryPoint {
    std::string name;
    Specialization spec;
    Parametrisation param = Parametrisation::GMP2;
};
// Reads {"points": [{"name": ..., "spec": <key>, "param": "GMP2"}, ...]}.
std::vector<BatteryPoint> parse_battery(const std::string& json_text);
std::vector<BatteryPoint> load_battery(const std::string& path);

struct LinkWitness {
    int upper = 0;
    int lower = 0;
    std::string point;  // empty if no battery point witnesses the link
    int multiplicity = 0;
};

struct PosetAudit {
    int n = 0;
    // Battery points used and those skipped because a parameter vanishes.
    std::vector<std::string> used, skipped;
    // (point, lambda, mu, multiplicity) for vanishing pairs found nonzero.
    std::vector<std::tuple<std::string, int, int, int>> violations;
    // One entry per covering link of the coarsened poset with both labels
    // nonzero.
    std::vector<LinkWitness> witnesses;
    bool subset_of_cellular = false;

    bool vanishing_holds() const { return violations.empty(); }
    int missing_witnesses() const;
};

// Runs the decomposition at every battery point, `jobs` points at a time.
PosetAudit audit_poset(int n, const std::vector<BatteryPoint>& battery, int jobs = 1);

}  // namespace sblob
