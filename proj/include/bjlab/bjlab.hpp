#pragma once

#include "bjlab/errors.hpp"
#include "bjlab/faces.hpp"
#include "bjlab/io.hpp"
#include "bjlab/kset.hpp"
#include "bjlab/linalg.hpp"
#include "bjlab/operators.hpp"
#include "bjlab/orthogonality.hpp"
#include "bjlab/preservation.hpp"
#include "bjlab/rational.hpp"
#include "bjlab/simplex.hpp"
#include "bjlab/space.hpp"
