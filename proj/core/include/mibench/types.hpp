#pragma once

#include <optional>
#include <string_view>

namespace mibench {

/// Bivariate families with a closed-form mutual information.
enum class Family { normal, lognormal, student_t };

/// Per-coordinate maps applied after sampling. All are bijections on the
/// reals, so they leave the population mutual information unchanged.
enum class Transform { none, cube, cube_root, exp_map };

std::string_view to_string(Family family);
std::string_view to_string(Transform transform);

// Accepts the CLI spellings as well ("student", "cuberoot", "exp").
std::optional<Family> parse_family(std::string_view text);
std::optional<Transform> parse_transform(std::string_view text);

}  // namespace mibench
