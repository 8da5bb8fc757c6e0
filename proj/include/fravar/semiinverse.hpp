#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fravar/eulagrange.hpp"
#include "fravar/jetfields.hpp"
#include "fravar/lagexpr.hpp"
#include "fravar/measure.hpp"

namespace fravar {

/// One defining relation of the potential field: a jet of phi on the left,
/// an expression in the primary field (and exogenous data) on the right.
struct Constraint {
  JetVar lhs;
  ExprPtr rhs;
};

/// One term of a target PDE residual pipeline: coeff * D_axis^{mult}(inner),
/// with mult 0 meaning a pointwise term.
struct PdeTerm {
  double coeff = 1.0;
  Axis axis = Axis::none;
  int mult = 0;
  ExprPtr inner;
};

/// A worked system: trial Lagrangian (possibly with an unknown completion
/// symbol), the potential-field constraints, the expected completion, and the
/// conservative-form residual of the governing equation.
struct SystemFixture {
  std::string name;
  ExprPtr trial_lagrangian;
  std::optional<std::string> placeholder;  // completion symbol in the trial
  std::vector<Constraint> constraints;
  ExprPtr expected_completion;             // null when the trial is already complete
  std::vector<PdeTerm> target_pde;
  ParamMap params;
  std::string primary_field;               // "theta", "y", or "u"
  std::string potential_field;             // "phi", empty for the 1D systems
  std::string el_field;                    // field whose EL equation is the PDE
};

/// oscillator | pendulum | burgers | kdv
SystemFixture builtin_system(const std::string& name);
std::vector<std::string> builtin_system_names();

/// phi = I^beta u along x (per t-line for 2D fields), normalized to phi = 0
/// at the lower x limit.
Field potential_from_field(const Field& u, FractionalOrder beta);

/// Residual fields and interior norms of each constraint at the given
/// samples.
struct ConstraintResidual {
  std::string name;
  Field residual;
  ProbeNorms norms;
};

std::vector<ConstraintResidual> constraint_residual(const SystemFixture& fixture,
                                                    const FieldMap& fields, FractionalOrder alpha,
                                                    FractionalOrder beta);

/// Monomial basis for the unknown completion; expressions in the primary
/// field, exogenous data, and jets of the primary field. Must not reference
/// the potential.
struct MonomialAnsatz {
  std::vector<ExprPtr> basis;
};

/// {u, u^2, u^3, F*u, u*D[u,x,2]}
MonomialAnsatz default_ansatz();

struct IdentifiedCompletion {
  std::vector<std::string> names;        // formatted basis monomials
  std::vector<double> coefficients;      // |c| < 1e-8 snapped to exact zero
  ExprPtr completion;                    // sum of the surviving terms
};

/// Solves the pointwise linear least-squares problem requiring the
/// Euler-Lagrange equation with respect to the primary field to vanish
/// identically once the constraints are substituted for the potential jets.
/// The substitution and the outer derivatives of the EL terms are applied
/// algebraically in jet form; numerical operators enter only through the
/// sampled jet values.
IdentifiedCompletion identify_completion(const SystemFixture& fixture,
                                         const MonomialAnsatz& ansatz,
                                         const std::vector<FieldMap>& samples,
                                         FractionalOrder alpha, FractionalOrder beta);

/// Constraint-consistent sample sets: smooth random polynomial phi, u defined
/// through the discrete x derivative, and (burgers) F from the t constraint.
std::vector<FieldMap> make_consistent_samples(const SystemFixture& fixture, const Grid2D& grid,
                                              FractionalOrder alpha, FractionalOrder beta,
                                              int count, std::uint64_t seed);

/// Algebraic Euler-Lagrange expression of the fixture's primary field with
/// the constraints substituted; exposed for tests.
ExprPtr el_in_jet_form(const SystemFixture& fixture, const ExprPtr& lagrangian);

/// Evaluates the conservative-form PDE residual pipeline on sampled fields.
Field target_pde_residual(const SystemFixture& fixture, const FieldMap& fields,
                          FractionalOrder alpha, FractionalOrder beta);

/// Completed-Lagrangian check: the EL residual with respect to the potential
/// (or the 1D field) against the conservative PDE residual, plus the value of
/// the fixture's constrained functional.
struct RecoveryReport {
  double agreement_l2 = 0.0;
  double agreement_max = 0.0;
  double residual_l2 = 0.0;
  double functional_value = 0.0;
};

RecoveryReport verify_el_recovery(const SystemFixture& fixture, const FieldMap& fields,
                                  FractionalOrder alpha, FractionalOrder beta);

/// The trial Lagrangian with its placeholder replaced by the expected (or a
/// supplied) completion.
ExprPtr completed_lagrangian(const SystemFixture& fixture, const ExprPtr& completion = nullptr);

}  // namespace fravar
