#pragma once

// Umbrella header.

#include <qsha/cartan.hpp>
#include <qsha/matrix.hpp>
#include <qsha/mpoly.hpp>
#include <qsha/path_algebra.hpp>
#include <qsha/quiver.hpp>
#include <qsha/random.hpp>
#include <qsha/ratexpr.hpp>
#include <qsha/rep.hpp>
#include <qsha/shuffle.hpp>
#include <qsha/suite.hpp>
#include <qsha/symmetrize.hpp>
#include <qsha/yangian.hpp>
