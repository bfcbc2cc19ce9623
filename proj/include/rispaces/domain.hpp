#ifndef RISPACES_DOMAIN_HPP
#define RISPACES_DOMAIN_HPP

#include <string>

#include "rispaces/errors.hpp"

namespace rispaces {

// The three Luxemburg representation domains.
enum class Domain { UnitInterval, HalfLine, Naturals };

inline const char* domain_name(Domain d) {
    switch (d) {
        case Domain::UnitInterval: return "unit";
        case Domain::HalfLine: return "halfline";
        case Domain::Naturals: return "naturals";
    }
    return "?";
}

inline Domain parse_domain(const std::string& s) {
    if (s == "unit") return Domain::UnitInterval;
    if (s == "halfline") return Domain::HalfLine;
    if (s == "naturals") return Domain::Naturals;
    throw Error(ErrorCode::ParseError, "unknown domain '" + s + "'");
}

inline void require_same_domain(Domain a, Domain b) {
    if (a != b)
        throw Error(ErrorCode::DomainMismatch,
                    std::string(domain_name(a)) + " vs " + domain_name(b));
}

} // namespace rispaces

#endif
