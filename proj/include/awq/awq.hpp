#pragma once

#include "awq/errors.hpp"
#include "awq/qcore.hpp"
#include "awq/hyperseries.hpp"
#include "awq/awpoly.hpp"
#include "awq/quadrature.hpp"
#include "awq/awoperator.hpp"
#include "awq/associated.hpp"
#include "awq/report.hpp"
#include "awq/contiguous.hpp"
#include "awq/inverseop.hpp"
#include "awq/eigenproblem.hpp"
