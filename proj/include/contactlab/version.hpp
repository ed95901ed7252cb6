#pragma once

#define CONTACTLAB_VERSION "0.1.0"
