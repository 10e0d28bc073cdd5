#pragma once

#include <array>
#include <string_view>

namespace tricomi {

struct Criterion {
    int id;
    std::string_view name;
};

/// Names shared by the acceptance runner and `tricomi-lab report`.
inline constexpr std::array<Criterion, 10> kCriteria{{
    {1, "Bessel accuracy"},
    {2, "Asymptotics"},
    {3, "Recurrence"},
    {4, "rho verification"},
    {5, "Figure reproduction"},
    {6, "Psi^r integral boundedness"},
    {7, "PDE scheme soundness"},
    {8, "Blow-up phenomenology"},
    {9, "Lifespan exponent"},
    {10, "Functional identities"},
}};

}  // namespace tricomi
