#pragma once

#include "bigint.hpp"
#include "collatz.hpp"
#include "error.hpp"
#include "numtheory.hpp"
#include "solver.hpp"
#include "tree_enum.hpp"
#include "tuple_codec.hpp"
