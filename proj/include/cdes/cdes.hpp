#pragma once

#include "cdes/counting.hpp"
#include "cdes/exact.hpp"
#include "cdes/necklace.hpp"
#include "cdes/permutation.hpp"
#include "cdes/report.hpp"
#include "cdes/tableaux.hpp"
#include "cdes/verify.hpp"
#include "cdes/version.hpp"
