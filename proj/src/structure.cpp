#include "poisson/structure.hpp"

namespace poisson {

std::string identity_name(Identity id)
{
    switch (id) {
    case Identity::commutative:
        return "commutative";
    case Identity::anticommutative:
        return "anticommutative";
    case Identity::associative:
        return "associative";
    case Identity::jacobi:
        return "jacobi";
    case Identity::leibniz:
        return "leibniz";
    case Identity::malcev:
        return "malcev";
    }
    return "?";
}

Identity identity_from_name(const std::string& s)
{
    for (Identity id : kAllIdentities)
        if (identity_name(id) == s)
            return id;
    throw InputError("unknown identity '" + s + "'");
}

}  // namespace poisson
