#ifndef MVOP_HPP_
#define MVOP_HPP_

#include "mvop/errors.hpp"
#include "mvop/mat2.hpp"
#include "mvop/jacobi.hpp"
#include "mvop/weights.hpp"
#include "mvop/diffop.hpp"
#include "mvop/families.hpp"
#include "mvop/json.hpp"
#include "mvop/verify.hpp"

#endif  // MVOP_HPP_
