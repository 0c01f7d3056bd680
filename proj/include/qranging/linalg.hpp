// linalg.hpp — single entry point for Eigen.  With EIGEN_USE_LAPACKE the
// Eigen core pulls in C99 <complex.h>, whose I macro clobbers ordinary
// template identifiers downstream; scrub it here.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#ifdef I
#undef I
#endif
