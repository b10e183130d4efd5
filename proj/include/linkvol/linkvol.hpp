#pragma once

#include "linkvol/numerics.hpp"
#include "linkvol/error.hpp"
#include "linkvol/diagram.hpp"
#include "linkvol/representation.hpp"
#include "linkvol/coloring.hpp"
#include "linkvol/potential.hpp"
#include "linkvol/engine.hpp"
#include "linkvol/pipeline.hpp"
#include "linkvol/io.hpp"
