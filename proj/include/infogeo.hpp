#pragma once

#include "infogeo/distribution.hpp"
#include "infogeo/elementary_symmetric.hpp"
#include "infogeo/entropy.hpp"
#include "infogeo/error.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/quantum.hpp"
#include "infogeo/summation.hpp"
