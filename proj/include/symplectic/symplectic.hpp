#pragma once

#include "symplectic/errors.hpp"
#include "symplectic/arith.hpp"
#include "symplectic/weierstrass.hpp"
#include "symplectic/tate.hpp"
#include "symplectic/reduction.hpp"
#include "symplectic/class_poly.hpp"
#include "symplectic/matrix.hpp"
#include "symplectic/goodred.hpp"
#include "symplectic/ffield.hpp"
#include "symplectic/torsion.hpp"
#include "symplectic/criteria.hpp"
#include "symplectic/diophantine.hpp"
#include "symplectic/fixtures.hpp"
#include "symplectic/report_json.hpp"
