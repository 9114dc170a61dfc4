#pragma once

#include "glueconn/bounds.hpp"
#include "glueconn/consensus.hpp"
#include "glueconn/eigen_sym.hpp"
#include "glueconn/error.hpp"
#include "glueconn/gluing.hpp"
#include "glueconn/graph.hpp"
#include "glueconn/io.hpp"
#include "glueconn/matrix.hpp"
#include "glueconn/spectral.hpp"
