#pragma once

#include "toricmld/applications.hpp"
#include "toricmld/case_analysis.hpp"
#include "toricmld/classify.hpp"
#include "toricmld/enumerate.hpp"
#include "toricmld/error.hpp"
#include "toricmld/germ.hpp"
#include "toricmld/lattice.hpp"
#include "toricmld/oracle.hpp"
#include "toricmld/rational.hpp"
#include "toricmld/serialize.hpp"
#include "toricmld/vec2.hpp"
