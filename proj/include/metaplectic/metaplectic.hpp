#pragma once

#include "metaplectic/matrix.hpp"
#include "metaplectic/random.hpp"
#include "metaplectic/symplectic.hpp"
#include "metaplectic/decompositions.hpp"
#include "metaplectic/decision.hpp"
#include "metaplectic/grid.hpp"
#include "metaplectic/io.hpp"
#include "metaplectic/selfcheck.hpp"
#include "metaplectic/cli.hpp"
