#pragma once

#include <stdexcept>
#include <string>

namespace bohrgap {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define BOHRGAP_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                                 \
        explicit Name(const std::string& what = #Name) : Error(what) {}   \
    }

// exactalg
BOHRGAP_DEFINE_ERROR(DegreeCapExceeded);
BOHRGAP_DEFINE_ERROR(DivisionByZero);

// groups
BOHRGAP_DEFINE_ERROR(BallTooLarge);
BOHRGAP_DEFINE_ERROR(NotSymmetric);
BOHRGAP_DEFINE_ERROR(MissingIdentity);
BOHRGAP_DEFINE_ERROR(NotProbability);
BOHRGAP_DEFINE_ERROR(NotGenerating);

// reps
BOHRGAP_DEFINE_ERROR(UnknownGenerator);
BOHRGAP_DEFINE_ERROR(DimensionMismatch);
BOHRGAP_DEFINE_ERROR(ZeroVector);
BOHRGAP_DEFINE_ERROR(NotUnitary);
BOHRGAP_DEFINE_ERROR(NotOrthogonal);

// markov
BOHRGAP_DEFINE_ERROR(NotConverged);
BOHRGAP_DEFINE_ERROR(HasInvariantVector);
BOHRGAP_DEFINE_ERROR(SingularOperator);

// almostinv
BOHRGAP_DEFINE_ERROR(NoAdmissibleIndex);
BOHRGAP_DEFINE_ERROR(DegenerateProjection);
BOHRGAP_DEFINE_ERROR(SubsequenceExhausted);
BOHRGAP_DEFINE_ERROR(SelectionFailed);
BOHRGAP_DEFINE_ERROR(ExactSqrtUnavailable);

// duality
BOHRGAP_DEFINE_ERROR(OrderCapExceeded);
BOHRGAP_DEFINE_ERROR(NotIntertwining);
BOHRGAP_DEFINE_ERROR(NotIsomorphism);
BOHRGAP_DEFINE_ERROR(NotUnimodular);
BOHRGAP_DEFINE_ERROR(InvalidAction);

// zconj
BOHRGAP_DEFINE_ERROR(TranscendentalInput);
BOHRGAP_DEFINE_ERROR(NotConjugate);
BOHRGAP_DEFINE_ERROR(RootSelectorAmbiguous);
BOHRGAP_DEFINE_ERROR(NotOnUnitCircle);

// cli / parsing
BOHRGAP_DEFINE_ERROR(ParseError);

#undef BOHRGAP_DEFINE_ERROR

}  // namespace bohrgap
