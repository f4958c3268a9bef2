// JSON documents. Field elements are strings ("3", "-2/7") so rationals stay
// exact; every top-level document carries "v": 1.
#ifndef NORMALBASIS_SERIALIZE_HPP
#define NORMALBASIS_SERIALIZE_HPP

#include <json.hpp>

#include "normalbasis/abelian_inv.hpp"
#include "normalbasis/fixtures.hpp"
#include "normalbasis/metacyclic_inv.hpp"
#include "normalbasis/normal_finder.hpp"

namespace normalbasis {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// "rational" or "prime:p".
CoeffField parse_field(const std::string& s);

/// Structural errors name the offending path, e.g. "generators[1][3]".
template <class T>
Json scalars_to_json(const std::vector<T>& v);
template <class T>
std::vector<T> scalars_from_json(const CoeffField& f, const Json& j, const std::string& path);

Json group_to_json(const GroupSpec& g);
GroupSpec group_from_json(const Json& j, const std::string& path);

template <class T>
Json fixture_to_json(const Fixture<T>& fx);
/// Scalars are read as rationals and mapped into f, so a rational fixture
/// file can be loaded over a prime field. Does not verify.
template <class T>
Fixture<T> fixture_from_json(const CoeffField& f, const Json& j);

Json root_hint_to_json(const RootHint& h);
RootHint root_hint_from_json(const Json& j, const std::string& path);

template <class T>
Json decomposed_to_json(const DecomposedElem<T>& x);
template <class T>
Json meta_verdict_to_json(const MetaVerdict<T>& v);

template <class T>
Json certificate_to_json(const NormalCertificate<T>& c);
template <class T>
NormalCertificate<T> certificate_from_json(const CoeffField& f, const GroupSpec& g, const Json& j);

}  // namespace normalbasis

#endif
