#pragma once

#include "rootgeom/errors.hpp"
#include "rootgeom/scalar.hpp"
#include "rootgeom/linalg.hpp"
#include "rootgeom/lp.hpp"
#include "rootgeom/root_system.hpp"
#include "rootgeom/projective.hpp"
#include "rootgeom/limits.hpp"
#include "rootgeom/faces.hpp"
#include "rootgeom/classify.hpp"
#include "rootgeom/dominance.hpp"
#include "rootgeom/cone_faces.hpp"
#include "rootgeom/universal.hpp"
#include "rootgeom/io.hpp"
#include "rootgeom/svg.hpp"
