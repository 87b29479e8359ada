export interface PixelPoint {
  cx: number;
  cy: number;
}

export const PICK_RADIUS_PX = 8;

/**
 * Index of the marker nearest to (px, py) within the pick radius, -1 if none.
 * Exact distance ties go to the earlier entry, i.e. payload order.
 */
export function nearestMarker(
  markers: readonly PixelPoint[],
  px: number,
  py: number,
  radius: number = PICK_RADIUS_PX,
): number {
  let best = -1;
  let bestDist = radius * radius;
  markers.forEach((m, i) => {
    const dx = m.cx - px;
    const dy = m.cy - py;
    const dist = dx * dx + dy * dy;
    if (dist < bestDist || (dist === bestDist && best === -1)) {
      best = i;
      bestDist = dist;
    }
  });
  return best;
}
