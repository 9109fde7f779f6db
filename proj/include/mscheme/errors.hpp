/*
   Copyright 2026 The matrixscheme authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MSCHEME_ERRORS_HPP
#define MSCHEME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mscheme {

// Domain errors carry a stable machine-readable code; the CLI maps any
// Error to exit status 1 and malformed input (std::invalid_argument,
// JSON parse failures) to exit status 2.
class Error : public std::runtime_error {
   public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

   private:
    std::string code_;
};

#define MSCHEME_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                      \
       public:                                                       \
        explicit Name(const std::string& message)                    \
            : Error(#Name, message) {}                               \
    }

MSCHEME_DEFINE_ERROR(DimensionMismatch);
MSCHEME_DEFINE_ERROR(ModeMismatch);
MSCHEME_DEFINE_ERROR(NotSquare);
MSCHEME_DEFINE_ERROR(ZeroPolynomial);
MSCHEME_DEFINE_ERROR(SplitFailure);
MSCHEME_DEFINE_ERROR(ComplexResidue);
MSCHEME_DEFINE_ERROR(NotContainingUnit);
MSCHEME_DEFINE_ERROR(NotCommuting);
MSCHEME_DEFINE_ERROR(NonRealSpectrum);
MSCHEME_DEFINE_ERROR(VariableCountMismatch);
MSCHEME_DEFINE_ERROR(RingMismatch);
MSCHEME_DEFINE_ERROR(MissingJet);
MSCHEME_DEFINE_ERROR(JetOrderTooLow);
MSCHEME_DEFINE_ERROR(OutOfWindow);
MSCHEME_DEFINE_ERROR(MatchingAmbiguity);
MSCHEME_DEFINE_ERROR(InfiniteZeroSet);
MSCHEME_DEFINE_ERROR(DivisionByZero);
MSCHEME_DEFINE_ERROR(ClosureOverflow);

#undef MSCHEME_DEFINE_ERROR

}  // namespace mscheme

#endif
