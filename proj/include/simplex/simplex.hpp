#pragma once

#include "simplex/certificate.hpp"
#include "simplex/core.hpp"
#include "simplex/error.hpp"
#include "simplex/oracles.hpp"
