// Plugin main thread. The panel does the HTTP work and posts the raw
// instructions payload here; this side validates, renders, and reports back.

import { BaseHandle, CanvasApi, executePlan, FontName } from './canvas';
import { interpretInstructions } from './interpreter';
import { PluginMessage, UIMessage } from './protocol';

figma.showUI(__html__, { width: 360, height: 480 });

// The handle interfaces are the subset of the Figma node API the executor
// touches, so real nodes satisfy them structurally.
const liveCanvas: CanvasApi = {
  createFrame: () => figma.createFrame() as unknown as ReturnType<CanvasApi['createFrame']>,
  createText: () => figma.createText() as unknown as ReturnType<CanvasApi['createText']>,
  createRectangle: () => figma.createRectangle() as unknown as ReturnType<CanvasApi['createRectangle']>,
  loadFont: (font: FontName) => figma.loadFontAsync(font),
  appendToPage: (node: BaseHandle) => {
    figma.currentPage.appendChild(node as unknown as SceneNode);
  },
};

let rendering = false;

figma.ui.onmessage = async (msg: UIMessage) => {
  switch (msg.type) {
    case 'render':
      await handleRender(msg.instructions);
      break;

    case 'cancel':
      figma.closePlugin();
      break;
  }
};

async function handleRender(instructions: unknown): Promise<void> {
  if (rendering) {
    return;
  }
  rendering = true;
  try {
    const plan = interpretInstructions(instructions);
    if (plan.length === 0) {
      throw new Error('the service returned no instructions');
    }
    const result = await executePlan(plan, liveCanvas);

    // Drop the component at the viewport center instead of the wire origin.
    const rootPlans = plan.filter((node) => node.parent === null);
    result.roots.forEach((root, index) => {
      root.x = Math.round(figma.viewport.center.x - rootPlans[index].width / 2);
      root.y = Math.round(figma.viewport.center.y - rootPlans[index].height / 2);
    });

    const selection = result.roots as unknown as SceneNode[];
    figma.currentPage.selection = selection;
    figma.viewport.scrollAndZoomIntoView(selection);

    for (const warning of result.warnings) {
      figma.notify(warning);
    }
    figma.notify(`Created ${result.created.length} node${result.created.length === 1 ? '' : 's'}`);
    sendToUI({ type: 'render-complete', nodeCount: result.created.length, warnings: result.warnings });
  } catch (err) {
    const message = err instanceof Error ? err.message : 'Unknown render error';
    figma.notify(message, { error: true });
    sendToUI({ type: 'render-error', message });
  } finally {
    rendering = false;
  }
}

function sendToUI(msg: PluginMessage): void {
  figma.ui.postMessage(msg);
}
