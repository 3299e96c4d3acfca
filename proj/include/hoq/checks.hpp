#pragma once

#include "hoq/matrix.hpp"

namespace hoq {

// Smallest eigenvalue of the Hermitian part (M + M^dag)/2.
double min_hermitian_eig(const ComplexMatrix& m);

bool hermitian_check(const ComplexMatrix& m, double tol);

// True iff M is Hermitian within tol and its smallest eigenvalue is >= -tol.
bool psd_check(const ComplexMatrix& m, double tol);

}  // namespace hoq
