#pragma once
// Convenience include for the whole library.

#include "tensorp/baselines.hpp"
#include "tensorp/beam.hpp"
#include "tensorp/decomposition.hpp"
#include "tensorp/eigenvalue_field.hpp"
#include "tensorp/error.hpp"
#include "tensorp/interpolator.hpp"
#include "tensorp/io.hpp"
#include "tensorp/linalg.hpp"
#include "tensorp/parallel.hpp"
#include "tensorp/rotation_field.hpp"
#include "tensorp/schemes.hpp"
#include "tensorp/so3.hpp"
#include "tensorp/symmetric_eigen.hpp"
#include "tensorp/verify.hpp"
#include "tensorp/wls.hpp"
