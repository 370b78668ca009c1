// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bowley/errors.hpp"
#include "bowley/sign_scan.hpp"
#include "bowley/distortion.hpp"
#include "bowley/loss.hpp"
#include "bowley/quadrature.hpp"
#include "bowley/choquet.hpp"
#include "bowley/equilibrium.hpp"
#include "bowley/pareto.hpp"
#include "bowley/oracle.hpp"
