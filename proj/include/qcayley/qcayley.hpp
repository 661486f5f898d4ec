#pragma once

#include "qcayley/errors.hpp"
#include "qcayley/scalar.hpp"
#include "qcayley/series.hpp"
#include "qcayley/fusion.hpp"
#include "qcayley/cayley.hpp"
#include "qcayley/qctree.hpp"
#include "qcayley/aunitary.hpp"
#include "qcayley/estimates.hpp"
