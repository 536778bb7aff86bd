#pragma once

#include "twoisog/arith.hpp"
#include "twoisog/curve.hpp"
#include "twoisog/descent.hpp"
#include "twoisog/family.hpp"
#include "twoisog/json_io.hpp"
#include "twoisog/localdata.hpp"
#include "twoisog/points.hpp"
#include "twoisog/poly.hpp"
#include "twoisog/rank.hpp"
#include "twoisog/scan.hpp"
