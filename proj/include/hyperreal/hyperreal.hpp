#pragma once

#include "hyperreal/errors.hpp"
#include "hyperreal/geometry.hpp"
#include "hyperreal/gluing.hpp"
#include "hyperreal/moduli.hpp"
#include "hyperreal/moebius.hpp"
#include "hyperreal/real_structures.hpp"
#include "hyperreal/render.hpp"
#include "hyperreal/sequential.hpp"
#include "hyperreal/serialize.hpp"
