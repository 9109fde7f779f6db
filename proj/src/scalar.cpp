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

#include "mscheme/scalar.hpp"

#include <sstream>

namespace mscheme {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational string");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational string: '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in rational: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string Scalar::str() const {
    if (is_exact()) {
        const GaussRat& g = exact_value();
        if (g.is_real()) return rational_str(g.re);
        return rational_str(g.re) + (g.im > 0 ? "+" : "") + rational_str(g.im) + "i";
    }
    std::ostringstream os;
    std::complex<double> z = numeric_value();
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    return os.str();
}

}  // namespace mscheme
