#pragma once

#include "palrich/analytic.hpp"
#include "palrich/avoidance.hpp"
#include "palrich/eertree.hpp"
#include "palrich/experiments.hpp"
#include "palrich/squares.hpp"
#include "palrich/word.hpp"
#include "palrich/wordgen.hpp"
