#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pk/paracontact.hpp"

namespace pk {

enum class Classification { einstein, quasi_einstein };
const char* to_string(Classification c);

// Constants of L_xi g + 2S + 2 lambda g + 2 mu eta (x) eta = 0.
struct SolitonSolution {
    Rational lambda;
    Rational mu;
    int n = 0;
    Classification classification = Classification::einstein;

    bool sum_rule() const { return lambda + mu == Rational(2 * n); }
};

class NoConstantSolution : public Error {
public:
    explicit NoConstantSolution(std::string witness)
        : Error("no constant eta-Ricci soliton solution; residual at " + witness), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

class NotInSpan : public Error {
public:
    explicit NotInSpan(std::string witness)
        : Error("tensor is not a constant combination of g and eta (x) eta; residual at " + witness),
          witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

class NotParallel : public Error {
public:
    NotParallel(std::string witness, Tensor residual)
        : Error("tensor is not parallel; nabla at " + witness), witness_(std::move(witness)),
          residual_(std::move(residual)) {}
    const std::string& witness() const { return witness_; }
    const Tensor& residual() const { return residual_; }  // full nabla alpha, (X; Y, Z)

private:
    std::string witness_;
    Tensor residual_;
};

class NotMultiple : public Error {
public:
    explicit NotMultiple(const std::string& what) : Error("parallel tensor is not a multiple of g: " + what) {}
};

class FactorExtractionFailed : public Error {
public:
    explicit FactorExtractionFailed(const std::string& what) : Error("factor extraction failed: " + what) {}
};

struct SpanCoefficients {
    Rational a;
    Rational b;
};

SolitonSolution solve_soliton(const ParacontactStructure& s, const RicciTensor& S);
// Constants a, b with S = a g + b eta (x) eta.
SpanCoefficients quasi_einstein_decompose(const ParacontactStructure& s, const RicciTensor& S);

enum class ConditionKind { R_dot_S, S_dot_R, W2_dot_S, S_dot_W2 };
inline constexpr ConditionKind all_condition_kinds[] = {ConditionKind::R_dot_S, ConditionKind::S_dot_R,
                                                        ConditionKind::W2_dot_S, ConditionKind::S_dot_W2};
const char* to_string(ConditionKind k);  // "R.S", "S.R", "W2.S", "S.W2"
std::optional<ConditionKind> parse_condition_kind(std::string_view text);

// R.S, W2.S: (0,3) tensor S(K(xi,X)Y,Z) + S(Y,K(xi,X)Z).
// S.R, S.W2: (1,4) tensor, the eight-term expansion of (S(xi,X) . K)(Y,Z)W.
Tensor condition_residual(ConditionKind kind, const ParacontactStructure& s, const RiemannTensor& R,
                          const RicciTensor& S, const W2Tensor& W2);
// For S.R and S.W2 the (0,4) contraction eta(P(X,Y,Z,W)); other kinds
// return condition_residual unchanged.
Tensor contracted_condition_residual(ConditionKind kind, const ParacontactStructure& s, const RiemannTensor& R,
                                     const RicciTensor& S, const W2Tensor& W2);

// Solution set (lambda, mu) of the soliton under the given condition, sorted.
std::vector<std::pair<Rational, Rational>> theorem_expected(ConditionKind kind, int n);

// Soliton data with lambda and mu left as formal parameters on the warped
// fixture of the given n: S = -(lambda+1) g - (mu-1) eta (x) eta.
struct SymbolicSoliton {
    ParacontactStructure s;
    FrameConnection conn;
    RiemannTensor R;
    RicciTensor S;
    RicciOperator Q;
    W2Tensor W2;
    ScalarExpr lambda;
    ScalarExpr mu;
    int lambda_var = 0;
    int mu_var = 0;
};
SymbolicSoliton make_symbolic_soliton(int n);

// Scalar f with residual = f * shape, or FactorExtractionFailed.
ScalarExpr extract_factor(const Tensor& residual, const Tensor& shape);

struct FactorCheck {
    ConditionKind kind;
    int n = 0;
    Symbols symbols;
    ScalarExpr raw;           // prefactor in lambda, mu
    ScalarExpr unreduced;     // expected prefactor before lambda = 2n - mu
    ScalarExpr reduced;       // raw with lambda = 2n - mu
    ScalarExpr expected;      // expected polynomial in mu
    std::vector<Rational> mu_roots;
    std::vector<std::pair<Rational, Rational>> pairs;  // (2n - mu, mu)

    bool raw_matches() const { return raw == unreduced; }
    bool matches() const { return reduced == expected; }
    bool pairs_match() const { return pairs == theorem_expected(kind, n); }
};
FactorCheck symbolic_factor_check(ConditionKind kind, int n);

// c with alpha = c g for a parallel symmetric alpha; NotParallel otherwise.
Rational parallel_tensor_classify(const Tensor& alpha, const FrameConnection& conn, const ParacontactStructure& s);

struct ParallelAlphaOutcome {
    CheckReport report;
    std::optional<Rational> recovered_lambda;
    std::optional<Rational> solved_lambda;
};
// alpha := L_xi g + 2S + 2 mu eta (x) eta with mu from solve_soliton, or the
// given override. When alpha is parallel the recovered lambda is
// -alpha(xi,xi)/2.
ParallelAlphaOutcome parallel_alpha_check(const ParacontactStructure& s, const FrameConnection& conn, const RicciTensor& S,
                                 std::optional<Rational> mu_override = std::nullopt);

// phi^2 (nabla Q) on the structure, nabla_xi Q, nabla_xi S, Q phi = phi Q and
// the generic prefactor of phi^2 (nabla Q).
std::vector<CheckReport> phi_ricci_symmetric_check(const ParacontactStructure& s, const FrameConnection& conn,
                                                   const RicciTensor& S, const RicciOperator& Q,
                                                   const std::optional<SolitonSolution>& solution);

}  // namespace pk
