#pragma once

#include <stdexcept>
#include <string>

namespace nlft {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define NLFT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(what) {}      \
  }

// laurent / rational / grid layer
NLFT_DEFINE_ERROR(PoleOnGrid);
NLFT_DEFINE_ERROR(BandTooWide);
NLFT_DEFINE_ERROR(DegenerateLeadingCoefficient);
NLFT_DEFINE_ERROR(NonFiniteSamples);

// pair layer
NLFT_DEFINE_ERROR(RepresentationMismatch);
NLFT_DEFINE_ERROR(ModulusAtLeastOne);
NLFT_DEFINE_ERROR(NonUnimodularModulation);

// spectral factorization
NLFT_DEFINE_ERROR(RootClassificationAmbiguous);
NLFT_DEFINE_ERROR(OddPoleOrderOnT);

// inverse transform
NLFT_DEFINE_ERROR(NotInImage);
NLFT_DEFINE_ERROR(PeelDivergence);
NLFT_DEFINE_ERROR(ModulusReachedOne);
NLFT_DEFINE_ERROR(TruncationExhausted);
NLFT_DEFINE_ERROR(NotInH);

// Riemann-Hilbert
NLFT_DEFINE_ERROR(NotBounded);
NLFT_DEFINE_ERROR(TruncationInsufficient);
NLFT_DEFINE_ERROR(PoleClassificationAmbiguous);
NLFT_DEFINE_ERROR(OrderMismatch);
NLFT_DEFINE_ERROR(ExtrapolationDiverged);

// orthogonal-polynomial bridges
NLFT_DEFINE_ERROR(DenominatorVanishes);
NLFT_DEFINE_ERROR(RankDeficient);
NLFT_DEFINE_ERROR(NonRealInput);
NLFT_DEFINE_ERROR(ValueOutOfRange);
NLFT_DEFINE_ERROR(AsymmetricInput);
NLFT_DEFINE_ERROR(SpectrumTooClose);

// io / cli
NLFT_DEFINE_ERROR(ParseError);

#undef NLFT_DEFINE_ERROR

}  // namespace nlft
