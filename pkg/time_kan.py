import time

from pathcheck.groupoids import GroupoidMap
from pathcheck.cylinder import walking_iso_interval
from pathcheck.universe import (PathTypeStructure,
                                standard_groupoid_universe)
from pathcheck.fibration import classifier_lift
from pathcheck.enumeration import SizeGuard, enumerate_maps
from pathcheck.kan import KanStructure, enumerate_box_problems, parameter_box

WI = walking_iso_interval()
U1 = standard_groupoid_universe("gpds1", with_loop=True)
pts1 = PathTypeStructure(U1, WI)
kan1 = KanStructure(pts1, classifier_lift(U1, WI))

WIg = WI.gpd
sigmas = [s for s in enumerate_maps(WIg, U1.ty)
          if set(s.obj_map.values()) == {"loop2"}]
sigma = sigmas[0]
ext = U1.extend(sigma)
print("sigma:", sigma.obj_map, "apex objects:", len(ext.apex.objects))

t0 = time.perf_counter()
Cn, box = parameter_box(WI, None, 3)
probs = []
for y in enumerate_maps(box.carrier, ext.apex, guard=SizeGuard(max_objects=64, max_morphisms=1024)):
    probs.append((y, y.then(ext.proj1)))
    if len(probs) >= 200:
        break
t1 = time.perf_counter()
print(f"gathered {len(probs)} problems in {t1 - t0:.2f}s")

t0 = time.perf_counter()
for y, over in probs:
    x = GroupoidMap(f"under({y.name})", Cn.gpd, WIg,
                    over.obj_map, over.mor_map, validate=False)
    kan1.fill_display(sigma, 3, y, x)
t1 = time.perf_counter()
print(f"fill_display n=3: {(t1 - t0) / len(probs) * 1000:.2f} ms/problem "
      f"({t1 - t0:.2f}s total for {len(probs)})")
