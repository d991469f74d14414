#pragma once

#include "sblob/homs.hpp"
#include "sblob/identities.hpp"
#include "sblob/qhpos.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace sblob {

using nlohmann::json;

// JSON encodings used by the command-line tool. Ring elements are written as
// text together with the specialisation key of their ring, so that every
// encoding parses back to an equal value. Object keys are sorted, which makes
// the output byte-stable.

json to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);

json to_json(const RingElem& x);
RingElem ring_elem_from_json(const json& j);

json to_json(const Matrix& m, const Ring* r);
Matrix matrix_from_json(const json& j);

json to_json(const LabelPoset& p);
LabelPoset poset_from_json(const json& j);

// Multiplicities as a square matrix, rows lambda and columns mu, both in
// the order of cell_labels(n).
json to_json(const DecompositionData& d);
DecompositionData decomposition_from_json(const json& j);

json to_json(const PosetAudit& a);
PosetAudit audit_from_json(const json& j);

json to_json(const IdentityReport& r);
IdentityReport identity_report_from_json(const json& j);

json to_json(const VerificationReport& r);
VerificationReport verification_from_json(const json& j);

// Nonzero image coefficients of a homomorphism, one list per source basis
// element.
struct HomImages {
    std::string spec;  // HomSpec::str()
    std::string ring;  // specialisation key
    int n = 0, src = 0, dst = 0;
    std::vector<std::vector<std::pair<Diagram, RingElem>>> images;

    bool operator==(const HomImages& o) const;
};
HomImages hom_images(const HomInstance& h);
json to_json(const HomImages& h);
HomImages hom_images_from_json(const json& j);

json to_json(const HomSpaceResult& r, const Ring* ring);
HomSpaceResult hom_space_from_json(const json& j);

}  // namespace sblob
