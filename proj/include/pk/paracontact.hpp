#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pk/curvature.hpp"

namespace pk {

enum class Status { pass, fail, skipped };

const char* to_string(Status s);

// Outcome of one named check. `reference` holds the identity being checked
// in plain notation; `witness` the first nonzero residual on failure.
struct CheckReport {
    std::string name;
    Status status = Status::pass;
    std::string reference;
    std::string witness;
    std::string detail;
    std::chrono::microseconds elapsed{0};

    bool passed() const { return status == Status::pass; }
};

// (phi, xi, eta, g) on a frame; all components are frame components.
struct ParacontactStructure {
    std::string name;
    Frame frame;
    Tensor phi;  // (1,1): phi.at({b, a}) = E_b component of phi(E_a)
    Vec xi;
    Vec eta;
    Tensor g;  // (0,2)
    int n = 0;
    std::vector<std::string> frame_names;

    std::size_t dimension() const { return frame.dimension(); }
    const Chart& chart() const { return frame.chart(); }
    Vec e(std::size_t a) const { return basis_vec(dimension(), a); }
    Vec apply_phi(const Vec& v) const { return phi.vector({v}); }
    ScalarExpr eta_of(const Vec& v) const;
    Tensor eta_eta() const { return outer(eta, eta); }
    Tensor eta_xi() const;  // (1,1) tensor X -> eta(X) xi
};

// Builds a structure whose gram is the frame's; eta is the g-dual of xi
// when not supplied.
ParacontactStructure make_structure(std::string name, Frame frame, Tensor phi, Vec xi,
                                    std::optional<Vec> eta, int n,
                                    std::vector<std::string> frame_names = {});

// Residual phi^2 - (Id - eta (x) xi).
Tensor phi_squared_residual(const ParacontactStructure& s);
// Residual (nabla_X phi)Y - g(phiX,Y) xi + eta(Y) phi X as a (1,2) tensor.
Tensor para_kenmotsu_residual(const ParacontactStructure& s, const FrameConnection& conn);

// Rank of (phi -+ Id) restricted to ker eta, when phi and eta are constant.
struct ParacomplexRanks {
    std::size_t plus;   // rank(P - Id)
    std::size_t minus;  // rank(P + Id)
};
std::optional<ParacomplexRanks> paracomplex_ranks(const ParacontactStructure& s);

std::vector<CheckReport> check_axioms(const ParacontactStructure& s);
CheckReport check_para_kenmotsu(const ParacontactStructure& s, const FrameConnection& conn);
// The fourteen identities implied by the para-Kenmotsu condition.
std::vector<CheckReport> identity_suite(const ParacontactStructure& s, const FrameConnection& conn,
                                        const RiemannTensor& R);

// Warped-product para-Kenmotsu structure of dimension 2n+1:
//   E_a = e^{cz} sum_j B_aj d/dw_j (a <= 2n),  xi = E_{2n+1} = -(1/c) d/dz,
// gram diag(+1 x n, -1 x n, +1) up to a permutation of the horizontal
// members, phi swapping each +1 member with a -1 member. Without a seed
// B = Id, c = 1 and the members come ordered (+, ..., -, ..., xi).
// `params` are adjoined to the chart as formal constants.
ParacontactStructure make_warped_fixture(int n, std::vector<std::string> params = {},
                                         std::optional<std::uint32_t> seed = std::nullopt);

// Runs f and stamps the elapsed wall time on the returned report.
template <typename F>
CheckReport timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport r = f();
    r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
    return r;
}

CheckReport tensor_check(std::string name, std::string reference, const Tensor& residual,
                         const std::vector<std::string>& frame_names);

}  // namespace pk
