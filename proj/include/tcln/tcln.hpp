#pragma once

#include "complexity.hpp"
#include "error.hpp"
#include "export.hpp"
#include "ids.hpp"
#include "indices.hpp"
#include "ingest.hpp"
#include "layout.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "sim.hpp"
#include "trajectory.hpp"
