#pragma once

#include "fptzone/asymptotics.hpp"

namespace fptzone::detail {

// The definite limit (0, 1, or +inf) of exp(term(t) - ref_coeff * ref(t)) as
// t -> inf, where ref is sqrt(t) or sqrt(2 t ln ln t). Shared by the profile
// translation and by tail-domination certification for switch-time bounds.
double growth_ratio_limit(const GrowthTerm& term, GrowthKind ref_kind, double ref_coeff);

}  // namespace fptzone::detail
