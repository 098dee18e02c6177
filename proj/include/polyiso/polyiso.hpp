#pragma once

#include "polyiso/errors.hpp"
#include "polyiso/geometry.hpp"
#include "polyiso/analysis.hpp"
#include "polyiso/threshold.hpp"
#include "polyiso/configurations.hpp"
