#pragma once

#include "core.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "christoffel.hpp"
#include "geodesics.hpp"
#include "transforms.hpp"
#include "mapping.hpp"
#include "sampling.hpp"
#include "verify.hpp"
