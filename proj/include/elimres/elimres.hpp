#pragma once

#include "elimres/error.hpp"
#include "elimres/scalar.hpp"
#include "elimres/space.hpp"
#include "elimres/poly.hpp"
#include "elimres/gcd.hpp"
#include "elimres/parse.hpp"
#include "elimres/matrix.hpp"
#include "elimres/grading.hpp"
#include "elimres/complexes.hpp"
#include "elimres/cayley.hpp"
#include "elimres/resultants.hpp"
#include "elimres/intersect.hpp"
#include "elimres/serialize.hpp"
