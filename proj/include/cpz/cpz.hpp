#pragma once

#include "cpz/consequence.hpp"
#include "cpz/cp.hpp"
#include "cpz/defaults.hpp"
#include "cpz/error.hpp"
#include "cpz/logic.hpp"
#include "cpz/parse.hpp"
#include "cpz/ranking.hpp"
#include "cpz/zplus.hpp"
