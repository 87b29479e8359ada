import type { PointPayload } from './types.js';

export const MAX_SELECTED = 4; // mirrors the SVG renderer's comparison cap

export interface ViewState {
  selectedDatasetIds: string[];
  activeDatasetId: string;
  selectedPoint: PointPayload | null;
  whatifIntensity: number | null;
  domainOverride: [number, number] | null;
}

function checkInvariant(state: ViewState): ViewState {
  if (state.selectedDatasetIds.length < 1 || state.selectedDatasetIds.length > MAX_SELECTED) {
    throw new RangeError(`1-${MAX_SELECTED} datasets may be selected, got ${state.selectedDatasetIds.length}`);
  }
  if (!state.selectedDatasetIds.includes(state.activeDatasetId)) {
    throw new RangeError(`active dataset ${state.activeDatasetId} is not among the selected ids`);
  }
  return state;
}

export function createViewState(selectedIds: string[], activeId?: string): ViewState {
  return checkInvariant({
    selectedDatasetIds: [...selectedIds],
    activeDatasetId: activeId ?? selectedIds[0] ?? '',
    selectedPoint: null,
    whatifIntensity: null,
    domainOverride: null,
  });
}

/** Switch the active dataset; point selection and what-if state reset. */
export function setActive(state: ViewState, id: string): ViewState {
  return checkInvariant({
    ...state,
    activeDatasetId: id,
    selectedPoint: null,
    whatifIntensity: null,
  });
}

export function selectPoint(state: ViewState, point: PointPayload | null): ViewState {
  return { ...state, selectedPoint: point, whatifIntensity: null };
}

export function setWhatIf(state: ViewState, intensity: number | null): ViewState {
  return { ...state, whatifIntensity: intensity };
}

export function setDomainOverride(state: ViewState, override: [number, number] | null): ViewState {
  if (override && !(override[0] > 0 && override[1] > override[0])) {
    throw new RangeError(`invalid domain override [${override[0]}, ${override[1]}]`);
  }
  return { ...state, domainOverride: override };
}
