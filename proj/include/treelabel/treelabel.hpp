#pragma once

#include "treelabel/bounds.hpp"
#include "treelabel/cyclic.hpp"
#include "treelabel/error.hpp"
#include "treelabel/io.hpp"
#include "treelabel/labelling.hpp"
#include "treelabel/linear.hpp"
#include "treelabel/solver.hpp"
#include "treelabel/tree.hpp"
#include "treelabel/verify.hpp"
