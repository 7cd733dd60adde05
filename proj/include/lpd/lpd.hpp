#pragma once

#include "analysis.hpp"
#include "coset.hpp"
#include "error.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "group.hpp"
#include "incidence.hpp"
#include "io.hpp"
#include "permutation.hpp"
#include "structure.hpp"
