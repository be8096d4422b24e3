#pragma once

#include "errors.hpp"
#include "model.hpp"
#include "format.hpp"
#include "dot.hpp"
#include "simulate.hpp"
#include "gallery.hpp"
#include "transform.hpp"
#include "oracle.hpp"
