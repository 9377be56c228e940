#pragma once

// Umbrella header: geometric means of symmetric positive definite matrices
// by direct factorization, quadratic matrix iterations, polar decomposition
// and rational quadrature, with conditioning estimates and benchmark
// problem families.

#include <gmean/conditioning.hpp>
#include <gmean/direct.hpp>
#include <gmean/io.hpp>
#include <gmean/iterations.hpp>
#include <gmean/linalg.hpp>
#include <gmean/polar.hpp>
#include <gmean/problems.hpp>
#include <gmean/quadrature.hpp>
#include <gmean/runner.hpp>
#include <gmean/types.hpp>
