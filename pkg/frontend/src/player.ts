// Player state machine: flow navigation with animated transitions, a
// per-step presentation clock driving ink replay, and annotation mode.

import {
  applyEasing,
  frameBounds,
  interpolateViewport,
  type Viewport,
} from "./geometry.js";
import type { Keyframe, Presentation, StepJson } from "./model.js";
import type { StrokeCollection } from "./ink.js";

export type Mode = "present" | "annotate";
export type NavigateCommand = "next" | "prev" | "home";

export interface Transition {
  from: Viewport;
  duration: number;
  easing: "linear" | "smoothstep";
  elapsed: number;
}

export interface PlayerState {
  cursor: number;
  /** Seconds since the current step was entered; drives ink replay. */
  clock: number;
  replaySpeed: number;
  mode: Mode;
  annotations: StrokeCollection;
  transition: Transition | null;
  atEnd: boolean;
}

export function initialState(): PlayerState {
  return {
    cursor: 0,
    clock: 0,
    replaySpeed: 1,
    mode: "present",
    annotations: { id: "annotations", strokes: [] },
    transition: null,
    atEnd: false,
  };
}

/** Target keyframe of a flow step; linear steps frame their slide. */
export function stepKeyframe(
  presentation: Presentation,
  step: StepJson,
  screen: [number, number],
): Keyframe {
  if (step.type === "nonlinear") {
    const kf = step.keyframe;
    return {
      viewport: {
        center: [kf.viewport.center[0], kf.viewport.center[1]],
        zoom: kf.viewport.zoom,
        rotation: kf.viewport.rotation,
      },
      transitionDuration: kf.transition_duration,
      dwellDuration: kf.dwell_duration,
      easing: kf.easing,
    };
  }
  const frame = presentation.slides.get(step.slide_id);
  if (!frame) throw new Error(`flow references missing slide ${step.slide_id}`);
  return {
    viewport: frameBounds(frame, screen, presentation.slideMargin),
    transitionDuration: presentation.slideTransition,
    dwellDuration: 0,
    easing: "smoothstep",
  };
}

export function targetViewport(
  presentation: Presentation,
  state: PlayerState,
  screen: [number, number],
): Viewport {
  return stepKeyframe(presentation, presentation.flow[state.cursor], screen).viewport;
}

/** Camera to draw right now, honoring a running transition. */
export function currentViewport(
  presentation: Presentation,
  state: PlayerState,
  screen: [number, number],
): Viewport {
  const target = targetViewport(presentation, state, screen);
  const tr = state.transition;
  if (!tr || tr.duration <= 0) return target;
  const t = Math.min(1, tr.elapsed / tr.duration);
  return interpolateViewport(tr.from, target, applyEasing(tr.easing, t));
}

/** Advance animation and replay clocks by dt seconds. */
export function tick(state: PlayerState, dt: number): PlayerState {
  const next = { ...state, clock: state.clock + dt };
  if (next.transition) {
    const elapsed = next.transition.elapsed + dt;
    next.transition =
      elapsed >= next.transition.duration ? null : { ...next.transition, elapsed };
  }
  return next;
}

function enterStep(
  presentation: Presentation,
  state: PlayerState,
  cursor: number,
  from: Viewport,
  screen: [number, number],
): PlayerState {
  const kf = stepKeyframe(presentation, presentation.flow[cursor], screen);
  return {
    ...state,
    cursor,
    clock: 0,
    atEnd: false,
    transition:
      kf.transitionDuration > 0
        ? { from, duration: kf.transitionDuration, easing: kf.easing, elapsed: 0 }
        : null,
  };
}

/**
 * next / prev / home with flow-boundary signalling. A command issued
 * mid-transition first jump-completes the current transition, so the new
 * transition starts from the step's target viewport.
 */
export function navigate(
  presentation: Presentation,
  state: PlayerState,
  command: NavigateCommand,
  screen: [number, number],
): PlayerState {
  const settled: PlayerState =
    state.transition !== null ? { ...state, transition: null } : state;
  const here = targetViewport(presentation, settled, screen);
  const last = presentation.flow.length - 1;

  if (command === "home") {
    return enterStep(presentation, settled, 0, here, screen);
  }
  if (command === "next") {
    if (settled.cursor >= last) return { ...settled, atEnd: true };
    return enterStep(presentation, settled, settled.cursor + 1, here, screen);
  }
  if (settled.cursor === 0) return { ...settled, atEnd: false };
  return enterStep(presentation, settled, settled.cursor - 1, here, screen);
}

export function setReplaySpeed(state: PlayerState, speed: number): PlayerState {
  if (speed <= 0) throw new RangeError(`replay speed must be positive, got ${speed}`);
  return { ...state, replaySpeed: speed };
}

export function toggleMode(state: PlayerState): PlayerState {
  return { ...state, mode: state.mode === "present" ? "annotate" : "present" };
}
