// Umbrella header for the fovplan camera-placement library.
#pragma once

#include "fovplan/geometry.hpp"
#include "fovplan/camera.hpp"
#include "fovplan/placement.hpp"
#include "fovplan/coverage.hpp"
#include "fovplan/config.hpp"
#include "fovplan/svg.hpp"
#include "fovplan/app.hpp"
