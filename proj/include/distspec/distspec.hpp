#pragma once

#include "distspec/bounds.hpp"
#include "distspec/cli.hpp"
#include "distspec/distance.hpp"
#include "distspec/errors.hpp"
#include "distspec/formats.hpp"
#include "distspec/graph.hpp"
#include "distspec/harness.hpp"
#include "distspec/spectral.hpp"
