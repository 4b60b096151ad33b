// Everything at once.
#pragma once

#include "bibundle.hpp"
#include "builders.hpp"
#include "chain_complex.hpp"
#include "cocycle.hpp"
#include "convolution.hpp"
#include "error.hpp"
#include "finite_group.hpp"
#include "fundamental_group.hpp"
#include "groupoid.hpp"
#include "groupoid_homology.hpp"
#include "groupoid_ops.hpp"
#include "ids.hpp"
#include "integer_matrix.hpp"
#include "json_io.hpp"
#include "leaves.hpp"
#include "morita.hpp"
#include "rational_matrix.hpp"
#include "simplicial.hpp"
#include "topology.hpp"
